#include "poscars/topology.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <utility>

#include "poscars/rng.hpp"

namespace poscars {

int SwitchGraph::switch_count() const {
  int n = 0;
  for (NodeKind k : kind) n += (k == NodeKind::Switch) ? 1 : 0;
  return n;
}

int SwitchGraph::end_node_count() const {
  int n = 0;
  for (NodeKind k : kind) n += (k != NodeKind::Switch) ? 1 : 0;
  return n;
}

namespace {

void add_edge(SwitchGraph& g, int a, int b) {
  g.adj[static_cast<std::size_t>(a)].push_back(b);
  g.adj[static_cast<std::size_t>(b)].push_back(a);
}

}  // namespace

SwitchGraph build_fat_tree(int k, int nfv_per_pod, std::uint64_t seed) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("fat-tree: k must be even and >= 2");
  const int half = k / 2;
  const int cores = half * half;
  const int aggs = k * half;
  const int edges = k * half;
  const int hosts_per_pod = half * half;
  const int hosts = k * hosts_per_pod;
  if (nfv_per_pod < 0 || nfv_per_pod > hosts_per_pod) {
    throw std::invalid_argument("fat-tree: nfv_per_pod out of range");
  }

  SwitchGraph g;
  g.kind.assign(static_cast<std::size_t>(cores + aggs + edges + hosts), NodeKind::Switch);
  g.adj.assign(g.kind.size(), {});

  auto core_id = [&](int i) { return i; };
  auto agg_id = [&](int pod, int a) { return cores + pod * half + a; };
  auto edge_id = [&](int pod, int e) { return cores + aggs + pod * half + e; };
  auto host_id = [&](int pod, int e, int h) {
    return cores + aggs + edges + pod * hosts_per_pod + e * half + h;
  };

  for (int pod = 0; pod < k; ++pod) {
    for (int e = 0; e < half; ++e) {
      for (int a = 0; a < half; ++a) add_edge(g, edge_id(pod, e), agg_id(pod, a));
      for (int h = 0; h < half; ++h) {
        int hid = host_id(pod, e, h);
        g.kind[static_cast<std::size_t>(hid)] = NodeKind::Host;
        add_edge(g, edge_id(pod, e), hid);
      }
    }
    // aggregation switch a reaches cores [a*half, (a+1)*half)
    for (int a = 0; a < half; ++a) {
      for (int j = 0; j < half; ++j) add_edge(g, agg_id(pod, a), core_id(a * half + j));
    }
  }

  Rng rng(derive_seed(seed, "fat-tree"));
  for (int pod = 0; pod < k; ++pod) {
    std::vector<int> picks = rng.sample_indices(hosts_per_pod, nfv_per_pod);
    std::sort(picks.begin(), picks.end());
    for (int p : picks) {
      int hid = cores + aggs + edges + pod * hosts_per_pod + p;
      g.kind[static_cast<std::size_t>(hid)] = NodeKind::NfvServer;
      g.nfv_servers.push_back(hid);
    }
  }
  std::sort(g.nfv_servers.begin(), g.nfv_servers.end());
  return g;
}

SwitchGraph build_jellyfish(int n_switches, int switch_degree, int servers_per_switch,
                            int n_nfv, std::uint64_t seed) {
  if (n_switches < 1 || switch_degree < 0 || servers_per_switch < 0) {
    throw std::invalid_argument("jellyfish: negative parameter");
  }
  if (switch_degree >= n_switches) {
    throw std::invalid_argument("jellyfish: degree must be below switch count");
  }
  if ((static_cast<long long>(n_switches) * switch_degree) % 2 != 0) {
    throw std::invalid_argument("jellyfish: n_switches * degree must be even");
  }
  if (n_switches > 1 && switch_degree < 1) {
    throw std::invalid_argument("jellyfish: degree must be >= 1 to connect switches");
  }
  const int servers = n_switches * servers_per_switch;
  if (n_nfv < 0 || n_nfv > servers) throw std::invalid_argument("jellyfish: n_nfv out of range");

  Rng rng(derive_seed(seed, "jellyfish"));

  // stub pairing for the random regular switch graph
  std::vector<std::pair<int, int>> edge_list;
  std::vector<int> stubs;
  stubs.reserve(static_cast<std::size_t>(n_switches) * switch_degree);
  for (int v = 0; v < n_switches; ++v) {
    for (int d = 0; d < switch_degree; ++d) stubs.push_back(v);
  }
  rng.shuffle(stubs);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    edge_list.emplace_back(stubs[i], stubs[i + 1]);
  }

  auto canon = [](int a, int b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); };

  // edge swaps until simple: pick a bad edge (self-loop or repeated pair) and
  // splice it with a random other edge; degrees are preserved
  std::set<std::pair<int, int>> present;
  auto rebuild_present = [&]() {
    present.clear();
    for (auto& e : edge_list) {
      if (e.first != e.second) present.insert(canon(e.first, e.second));
    }
  };
  auto first_bad = [&]() -> std::size_t {
    std::set<std::pair<int, int>> seen;
    for (std::size_t i = 0; i < edge_list.size(); ++i) {
      auto [a, b] = edge_list[i];
      if (a == b) return i;
      if (!seen.insert(canon(a, b)).second) return i;
    }
    return edge_list.size();
  };
  rebuild_present();

  const int max_swaps = 200 * static_cast<int>(edge_list.size() + 4);
  int guard = 0;
  while (guard++ < max_swaps) {
    std::size_t bad = first_bad();
    if (bad == edge_list.size()) break;
    if (edge_list.size() < 2) throw std::runtime_error("jellyfish: cannot repair degree sequence");
    std::size_t other =
        static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(edge_list.size()) - 1));
    if (other == bad) continue;
    auto [a, b] = edge_list[bad];
    auto [c, d] = edge_list[other];
    auto ok = [&](int x, int y) { return x != y && present.count(canon(x, y)) == 0; };
    // try (a,c)(b,d) then (a,d)(b,c)
    for (int variant = 0; variant < 2; ++variant) {
      int p = variant == 0 ? c : d;
      int q = variant == 0 ? d : c;
      if (ok(a, p) && ok(b, q) && canon(a, p) != canon(b, q)) {
        edge_list[bad] = {a, p};
        edge_list[other] = {b, q};
        rebuild_present();
        break;
      }
    }
  }
  if (first_bad() != edge_list.size()) {
    throw std::runtime_error("jellyfish: failed to build a simple regular graph");
  }

  // connectivity repair: splice one edge of the main component with one of
  // another component; degrees are preserved and the components merge
  auto components = [&]() {
    std::vector<int> comp(static_cast<std::size_t>(n_switches), -1);
    int n = 0;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_switches));
    for (auto& e : edge_list) {
      adj[static_cast<std::size_t>(e.first)].push_back(e.second);
      adj[static_cast<std::size_t>(e.second)].push_back(e.first);
    }
    for (int v = 0; v < n_switches; ++v) {
      if (comp[static_cast<std::size_t>(v)] >= 0) continue;
      std::deque<int> q{v};
      comp[static_cast<std::size_t>(v)] = n;
      while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int w : adj[static_cast<std::size_t>(u)]) {
          if (comp[static_cast<std::size_t>(w)] < 0) {
            comp[static_cast<std::size_t>(w)] = n;
            q.push_back(w);
          }
        }
      }
      ++n;
    }
    return std::make_pair(comp, n);
  };

  guard = 0;
  while (n_switches > 1 && guard++ < max_swaps) {
    auto [comp, n] = components();
    if (n <= 1) break;
    std::vector<std::size_t> inside, outside;
    for (std::size_t i = 0; i < edge_list.size(); ++i) {
      int ca = comp[static_cast<std::size_t>(edge_list[i].first)];
      if (ca == 0) {
        inside.push_back(i);
      } else {
        outside.push_back(i);
      }
    }
    if (inside.empty() || outside.empty()) {
      throw std::runtime_error("jellyfish: cannot connect graph with this degree");
    }
    std::size_t i = inside[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<int>(inside.size()) - 1))];
    std::size_t j = outside[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<int>(outside.size()) - 1))];
    auto [a, b] = edge_list[i];
    auto [c, d] = edge_list[j];
    edge_list[i] = {a, c};
    edge_list[j] = {b, d};
    rebuild_present();
  }
  if (n_switches > 1) {
    auto [comp, n] = components();
    if (n != 1) throw std::runtime_error("jellyfish: failed to connect graph");
  }

  SwitchGraph g;
  g.kind.assign(static_cast<std::size_t>(n_switches + servers), NodeKind::Switch);
  g.adj.assign(g.kind.size(), {});
  for (auto& e : edge_list) add_edge(g, e.first, e.second);
  for (int s = 0; s < servers; ++s) {
    int node = n_switches + s;
    g.kind[static_cast<std::size_t>(node)] = NodeKind::Host;
    add_edge(g, node, s / servers_per_switch);
  }
  std::vector<int> picks = rng.sample_indices(servers, n_nfv);
  std::sort(picks.begin(), picks.end());
  for (int p : picks) {
    int node = n_switches + p;
    g.kind[static_cast<std::size_t>(node)] = NodeKind::NfvServer;
    g.nfv_servers.push_back(node);
  }
  return g;
}

HopMatrix hop_matrix(const SwitchGraph& g) {
  const int ns = static_cast<int>(g.nfv_servers.size());
  HopMatrix m;
  m.hops.assign(static_cast<std::size_t>(ns), std::vector<int>(static_cast<std::size_t>(ns), -1));
  std::vector<int> dist;
  for (int i = 0; i < ns; ++i) {
    dist.assign(g.kind.size(), -1);
    std::deque<int> q{g.nfv_servers[static_cast<std::size_t>(i)]};
    dist[static_cast<std::size_t>(g.nfv_servers[static_cast<std::size_t>(i)])] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int w : g.adj[static_cast<std::size_t>(u)]) {
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
          q.push_back(w);
        }
      }
    }
    for (int j = 0; j < ns; ++j) {
      m.hops[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          dist[static_cast<std::size_t>(g.nfv_servers[static_cast<std::size_t>(j)])];
    }
  }
  return m;
}

CommCostMatrix comm_cost_matrix(const HopMatrix& hops, double base_cost,
                                double variation_frac, std::uint64_t seed) {
  if (base_cost < 0 || variation_frac < 0 || variation_frac > 1) {
    throw std::invalid_argument("comm_cost_matrix: bad base cost or variation");
  }
  const int ns = static_cast<int>(hops.hops.size());
  CommCostMatrix m;
  m.hops = hops.hops;
  m.cost.assign(static_cast<std::size_t>(ns), std::vector<double>(static_cast<std::size_t>(ns), 0.0));
  Rng rng(derive_seed(seed, "comm-cost"));
  for (int i = 0; i < ns; ++i) {
    for (int j = i + 1; j < ns; ++j) {
      int h = hops.hops[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      double c;
      if (h < 0) {
        c = kUnreachableCost;
        rng.uniform01();  // keep the draw sequence aligned regardless of reachability
      } else {
        double u = rng.uniform(-variation_frac, variation_frac);
        c = h * base_cost * (1.0 + u);
      }
      m.cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = c;
      m.cost[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = c;
    }
  }
  return m;
}

bool is_connected(const SwitchGraph& g) {
  if (g.kind.empty()) return true;
  std::vector<char> seen(g.kind.size(), 0);
  std::deque<int> q{0};
  seen[0] = 1;
  int n = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int w : g.adj[static_cast<std::size_t>(u)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++n;
        q.push_back(w);
      }
    }
  }
  return n == g.node_count();
}

void write_edge_list(const SwitchGraph& g, std::ostream& os) {
  for (int u = 0; u < g.node_count(); ++u) {
    for (int w : g.adj[static_cast<std::size_t>(u)]) {
      if (u < w) os << u << ' ' << w << '\n';
    }
  }
}

void write_cost_csv(const CommCostMatrix& m, std::ostream& os) {
  for (const auto& row : m.cost) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) os << ',';
      os << row[j];
    }
    os << '\n';
  }
}

}  // namespace poscars
