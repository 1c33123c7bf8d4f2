#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "poscars/domain.hpp"
#include "poscars/topology.hpp"

namespace poscars {

// One (VNF, server) pair. Instance ids are dense and ordered by
// (vnf id, server id) so every per-instance loop is deterministic.
struct InstanceRef {
  int vnf = 0;
  int server = 0;
};

struct InstanceIndex {
  std::vector<InstanceRef> instances;
  std::vector<std::vector<int>> of_vnf;     // vnf -> instance ids, server ascending
  std::vector<std::vector<int>> on_server;  // server -> instance ids
  std::map<std::pair<int, int>, int> lookup;

  int id_of(int vnf, int server) const {
    auto it = lookup.find({vnf, server});
    if (it == lookup.end()) throw std::out_of_range("instance lookup: no such placement");
    return it->second;
  }
  int count() const { return static_cast<int>(instances.size()); }
};

InstanceIndex build_instance_index(const Catalog& catalog, const Placement& placement);

// Everything static for one scenario: machines, chains, placement and
// transfer prices. Queue state lives elsewhere.
struct Model {
  std::vector<Server> servers;
  Catalog catalog;
  Placement placement;
  CommCostMatrix comm;
  InstanceIndex index;

  int zero_option(int vnf) const;  // index of the all-zero allocation
};

// Validates and finishes a model (builds the instance index). Throws
// std::invalid_argument listing the violations if the parts do not fit.
Model assemble_model(std::vector<Server> servers, Catalog catalog, Placement placement,
                     CommCostMatrix comm);

}  // namespace poscars
