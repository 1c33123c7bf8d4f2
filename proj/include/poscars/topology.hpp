#pragma once

#include <cstdint>
#include <limits>
#include <ostream>
#include <vector>

namespace poscars {

enum class NodeKind { Switch, Host, NfvServer };

// Undirected data-centre graph. NFV-capable end nodes are listed in
// nfv_servers (ascending node id); their list position is the server index
// used everywhere else in the library.
struct SwitchGraph {
  std::vector<NodeKind> kind;
  std::vector<std::vector<int>> adj;
  std::vector<int> nfv_servers;

  int node_count() const { return static_cast<int>(kind.size()); }
  int switch_count() const;
  int end_node_count() const;
};

// k-ary fat-tree: (k/2)^2 core, k*(k/2) aggregation and k*(k/2) edge
// switches, k^3/4 hosts. nfv_per_pod hosts in every pod are promoted to NFV
// servers, chosen by the seeded RNG. k must be even and >= 2.
SwitchGraph build_fat_tree(int k, int nfv_per_pod, std::uint64_t seed);

// Jellyfish: random switch_degree-regular graph among n_switches switches
// (seeded stub pairing, then edge swaps until the graph is simple and
// connected), servers_per_switch end nodes per switch, n_nfv of them NFV.
SwitchGraph build_jellyfish(int n_switches, int switch_degree, int servers_per_switch,
                            int n_nfv, std::uint64_t seed);

// Pairwise hop counts between NFV servers (edges on the shortest path; two
// servers behind one edge switch are 2 hops apart). -1 marks unreachable.
struct HopMatrix {
  std::vector<std::vector<int>> hops;
};

HopMatrix hop_matrix(const SwitchGraph& g);

inline constexpr double kUnreachableCost = std::numeric_limits<double>::infinity();

// Per-request transfer prices between NFV servers. cost = hops * base *
// (1 + u) with u drawn once per pair at build time from
// Uniform(-variation_frac, +variation_frac); mirrored so the matrix stays
// symmetric. Unreachable pairs carry kUnreachableCost.
struct CommCostMatrix {
  std::vector<std::vector<double>> cost;
  std::vector<std::vector<int>> hops;

  int size() const { return static_cast<int>(cost.size()); }
};

CommCostMatrix comm_cost_matrix(const HopMatrix& hops, double base_cost,
                                double variation_frac, std::uint64_t seed);

bool is_connected(const SwitchGraph& g);

void write_edge_list(const SwitchGraph& g, std::ostream& os);
void write_cost_csv(const CommCostMatrix& m, std::ostream& os);

}  // namespace poscars
