#include <doctest.h>

#include <algorithm>
#include <set>

#include "poscars/topology.hpp"

using namespace poscars;

namespace {

int count_kind(const SwitchGraph& g, NodeKind k) {
  int n = 0;
  for (NodeKind x : g.kind) n += (x == k) ? 1 : 0;
  return n;
}

}  // namespace

TEST_CASE("fat-tree node counts") {
  // 5k^2/4 switches and k^3/4 hosts
  struct Row {
    int k, switches, hosts;
  };
  for (Row r : {Row{2, 5, 2}, Row{4, 20, 16}, Row{6, 45, 54}, Row{8, 80, 128}}) {
    SwitchGraph g = build_fat_tree(r.k, 1, 7);
    CHECK(g.switch_count() == r.switches);
    CHECK(g.end_node_count() == r.hosts);
    CHECK(static_cast<int>(g.nfv_servers.size()) == r.k);  // one per pod
    CHECK(is_connected(g));
  }
}

TEST_CASE("fat-tree rejects bad parameters") {
  CHECK_THROWS_AS(build_fat_tree(3, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_fat_tree(0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_fat_tree(4, 5, 1), std::invalid_argument);  // 4 hosts per pod
  CHECK_THROWS_AS(build_fat_tree(4, -1, 1), std::invalid_argument);
  CHECK(build_fat_tree(4, 0, 1).nfv_servers.empty());
}

TEST_CASE("fat-tree hop distances are 2, 4 or 6") {
  SwitchGraph g = build_fat_tree(4, 2, 11);
  HopMatrix h = hop_matrix(g);
  const int n = static_cast<int>(g.nfv_servers.size());
  REQUIRE(n == 8);
  bool saw_cross_pod = false;
  for (int i = 0; i < n; ++i) {
    CHECK(h.hops[i][i] == 0);
    for (int j = 0; j < n; ++j) {
      CHECK(h.hops[i][j] == h.hops[j][i]);
      if (i == j) continue;
      CHECK((h.hops[i][j] == 2 || h.hops[i][j] == 4 || h.hops[i][j] == 6));
      saw_cross_pod |= h.hops[i][j] == 6;
      // hosts beneath one edge switch sit exactly two hops apart
      int hi = g.nfv_servers[i], hj = g.nfv_servers[j];
      if (g.adj[hi] == g.adj[hj]) CHECK(h.hops[i][j] == 2);
    }
  }
  CHECK(saw_cross_pod);  // 2 per pod over 4 pods must cross somewhere
}

TEST_CASE("jellyfish degenerates to the complete graph") {
  // 4 switches of degree 3 leave no freedom: K4
  SwitchGraph g = build_jellyfish(4, 3, 1, 2, 3);
  for (int v = 0; v < g.node_count(); ++v) {
    if (g.kind[v] != NodeKind::Switch) continue;
    int switch_neighbors = 0;
    for (int u : g.adj[v]) switch_neighbors += (g.kind[u] == NodeKind::Switch) ? 1 : 0;
    CHECK(switch_neighbors == 3);
  }
  CHECK(g.switch_count() == 4);
  CHECK(g.end_node_count() == 4);
  CHECK(static_cast<int>(g.nfv_servers.size()) == 2);
  CHECK(is_connected(g));
}

TEST_CASE("jellyfish builds a connected 2-regular ring") {
  SwitchGraph g = build_jellyfish(6, 2, 1, 3, 5);
  for (int v = 0; v < g.node_count(); ++v) {
    if (g.kind[v] != NodeKind::Switch) continue;
    int switch_neighbors = 0;
    for (int u : g.adj[v]) switch_neighbors += (g.kind[u] == NodeKind::Switch) ? 1 : 0;
    CHECK(switch_neighbors == 2);  // connected 2-regular = a single cycle
  }
  CHECK(is_connected(g));
}

TEST_CASE("jellyfish rejects unrealizable degree sequences") {
  CHECK_THROWS_AS(build_jellyfish(5, 3, 1, 1, 1), std::invalid_argument);  // odd sum
  CHECK_THROWS_AS(build_jellyfish(4, 4, 1, 1, 1), std::invalid_argument);  // degree too high
  CHECK_THROWS_AS(build_jellyfish(4, 0, 1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_jellyfish(4, 2, 1, 9, 1), std::invalid_argument);  // nfv > servers
}

TEST_CASE("transfer prices scale hops within the jitter band") {
  SwitchGraph g = build_fat_tree(4, 2, 11);
  HopMatrix h = hop_matrix(g);
  CommCostMatrix m = comm_cost_matrix(h, 3.0, 0.1, 17);
  const int n = m.size();
  for (int i = 0; i < n; ++i) {
    CHECK(m.cost[i][i] == 0.0);
    for (int j = 0; j < n; ++j) {
      CHECK(m.cost[i][j] == m.cost[j][i]);  // mirrored draw, bit-exact
      if (i == j) continue;
      double per_hop = m.cost[i][j] / (3.0 * h.hops[i][j]);
      CHECK(per_hop >= 0.9);
      CHECK(per_hop <= 1.1);
    }
  }
}

TEST_CASE("zero variation gives exact hop pricing") {
  HopMatrix h;
  h.hops = {{0, 2, 6}, {2, 0, 4}, {6, 4, 0}};
  CommCostMatrix m = comm_cost_matrix(h, 1.5, 0.0, 1);
  CHECK(m.cost[0][1] == 3.0);
  CHECK(m.cost[0][2] == 9.0);
  CHECK(m.cost[1][2] == 6.0);
}

TEST_CASE("unreachable pairs price at infinity") {
  HopMatrix h;
  h.hops = {{0, -1}, {-1, 0}};
  CommCostMatrix m = comm_cost_matrix(h, 1.0, 0.1, 1);
  CHECK(m.cost[0][1] == kUnreachableCost);
  CHECK(m.hops[0][1] == -1);
}

TEST_CASE("topology builds are reproducible per seed") {
  SwitchGraph a = build_fat_tree(4, 2, 42);
  SwitchGraph b = build_fat_tree(4, 2, 42);
  CHECK(a.nfv_servers == b.nfv_servers);
  CHECK(a.adj == b.adj);

  SwitchGraph c = build_jellyfish(8, 3, 1, 4, 9);
  SwitchGraph d = build_jellyfish(8, 3, 1, 4, 9);
  CHECK(c.adj == d.adj);
  CHECK(c.nfv_servers == d.nfv_servers);

  HopMatrix h = hop_matrix(a);
  CommCostMatrix m1 = comm_cost_matrix(h, 2.0, 0.2, 5);
  CommCostMatrix m2 = comm_cost_matrix(h, 2.0, 0.2, 5);
  CHECK(m1.cost == m2.cost);
  CommCostMatrix m3 = comm_cost_matrix(h, 2.0, 0.2, 6);
  CHECK(m1.cost != m3.cost);
}

TEST_CASE("nfv server choice varies with the seed but stays one list per pod") {
  SwitchGraph a = build_fat_tree(4, 2, 1);
  CHECK(std::is_sorted(a.nfv_servers.begin(), a.nfv_servers.end()));
  std::set<int> uniq(a.nfv_servers.begin(), a.nfv_servers.end());
  CHECK(uniq.size() == a.nfv_servers.size());
  for (int s : a.nfv_servers) CHECK(a.kind[s] == NodeKind::NfvServer);
}
