#include "poscars/model_gen.hpp"

#include <algorithm>
#include <stdexcept>

#include "poscars/rng.hpp"
#include "poscars/workload.hpp"

namespace poscars {

Model build_model(const GenSpec& spec, std::uint64_t seed) {
  return build_model(spec, seed, derive_seed(seed, "win"));
}

Model build_model(const GenSpec& spec, std::uint64_t seed, std::uint64_t window_seed) {
  if (spec.services < 1) throw std::invalid_argument("model gen: need at least one service");
  if (spec.chain_min < 2 || spec.chain_max < spec.chain_min) {
    throw std::invalid_argument("model gen: chain length range invalid (min 2)");
  }
  if (spec.instances_min < 1 || spec.instances_max < spec.instances_min) {
    throw std::invalid_argument("model gen: instance range invalid");
  }
  if (spec.y_max < 1) throw std::invalid_argument("model gen: y_max must be >= 1");

  SwitchGraph graph =
      spec.topology == GenSpec::Topology::FatTree
          ? build_fat_tree(spec.fat_k, spec.nfv_per_pod, derive_seed(seed, "topo"))
          : build_jellyfish(spec.jf_switches, spec.jf_degree, spec.jf_servers_per_switch,
                            spec.jf_nfv, derive_seed(seed, "topo"));
  CommCostMatrix comm =
      comm_cost_matrix(hop_matrix(graph), spec.base_cost, spec.variation, derive_seed(seed, "w"));

  const int ns = static_cast<int>(graph.nfv_servers.size());
  if (ns < 1) throw std::invalid_argument("model gen: topology has no NFV servers");

  Rng rng(derive_seed(seed, "model"));
  std::vector<Server> servers;
  servers.reserve(static_cast<std::size_t>(ns));
  for (int s = 0; s < ns; ++s) {
    servers.push_back(Server{s,
                             {rng.uniform_int(spec.cores_min, spec.cores_max)},
                             {rng.uniform_int(spec.lambda_min, spec.lambda_max)}});
  }

  Catalog catalog;
  std::vector<int> windows = assign_window_sizes(spec.d_avg, spec.services, window_seed);
  for (int k = 0; k < spec.services; ++k) {
    ServiceChainSpec chain;
    chain.id = k;
    chain.window_size = spec.force_window_one ? 1 : windows[static_cast<std::size_t>(k)];
    int len = rng.uniform_int(spec.chain_min, spec.chain_max);
    for (int pos = 1; pos <= len; ++pos) {
      VnfSpec v;
      v.id = static_cast<int>(catalog.vnfs.size());
      v.service = k;
      v.position = pos;
      v.theta = {rng.uniform_int(spec.theta_min, spec.theta_max)};
      v.phi_max = spec.phi_max;
      for (int y = 0; y <= spec.y_max; ++y) v.options.push_back({y});
      chain.vnfs.push_back(v.id);
      catalog.vnfs.push_back(std::move(v));
    }
    catalog.services.push_back(std::move(chain));
  }

  Placement placement;
  placement.hosted.assign(static_cast<std::size_t>(ns), {});
  placement.hosts.assign(catalog.vnfs.size(), {});
  for (const auto& v : catalog.vnfs) {
    int want = std::min(ns, rng.uniform_int(spec.instances_min, spec.instances_max));
    std::vector<int> picks = rng.sample_indices(ns, want);
    std::sort(picks.begin(), picks.end());
    for (int s : picks) {
      placement.hosts[static_cast<std::size_t>(v.id)].push_back(s);
      placement.hosted[static_cast<std::size_t>(s)].push_back(v.id);
    }
  }
  for (auto& fs : placement.hosted) std::sort(fs.begin(), fs.end());

  return assemble_model(std::move(servers), std::move(catalog), std::move(placement),
                        std::move(comm));
}

}  // namespace poscars
