#pragma once

#include <cstdint>

#include "poscars/model.hpp"

namespace poscars {

// Knobs for a randomly generated scenario. Ranges are inclusive.
struct GenSpec {
  enum class Topology { FatTree, Jellyfish } topology = Topology::FatTree;
  int fat_k = 4;
  int nfv_per_pod = 2;
  int jf_switches = 20;
  int jf_degree = 4;
  int jf_servers_per_switch = 1;
  int jf_nfv = 8;
  double base_cost = 1.0;
  double variation = 0.1;

  int services = 5;
  int chain_min = 3;
  int chain_max = 5;
  int instances_min = 2;
  int instances_max = 4;
  int theta_min = 2;
  int theta_max = 2;
  int phi_max = 10;
  int y_max = 4;  // allocation options are 0..y_max units of each resource
  int cores_min = 4;
  int cores_max = 8;
  int lambda_min = 1;
  int lambda_max = 3;

  int d_avg = 0;  // per-service window sizes drawn from {0..2*d_avg}
  bool force_window_one = false;  // learned forecasters run with D_k = 1
};

// Layout (topology, chains, placement, machine sizes) follows `seed`;
// window sizes follow `window_seed` so replications can re-draw them while
// sharing the layout. The one-argument form ties both to `seed`.
Model build_model(const GenSpec& spec, std::uint64_t seed);
Model build_model(const GenSpec& spec, std::uint64_t seed, std::uint64_t window_seed);

}  // namespace poscars
