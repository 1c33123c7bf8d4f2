#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace poscars {

// Multi-type resource amounts (cores, memory, ...). All entries are
// non-negative integers; the number of types is fixed per model.
using ResourceVec = std::vector<int>;

bool fits(const ResourceVec& a, const ResourceVec& cap);  // a <= cap elementwise
void add_inplace(ResourceVec& a, const ResourceVec& b);
long long dot(const ResourceVec& a, const ResourceVec& b);
bool lex_less(const ResourceVec& a, const ResourceVec& b);

struct Server {
  int id = 0;
  ResourceVec capacity;   // c_s
  ResourceVec unit_cost;  // energy price per allocated resource unit
};

struct VnfSpec {
  int id = 0;
  int service = 0;
  int position = 1;  // 1-based position within the owning chain
  ResourceVec theta;  // requests processed per unit of each resource type
  int phi_max = 1;    // hard per-slot service rate cap
  std::vector<ResourceVec> options;  // allowed allocations, always contains all-zero
};

struct ServiceChainSpec {
  int id = 0;
  std::vector<int> vnfs;  // ordered, length >= 2
  int window_size = 0;    // lookahead depth D_k
};

struct Placement {
  std::vector<std::vector<int>> hosted;  // server id -> vnf ids, ascending
  std::vector<std::vector<int>> hosts;   // vnf id -> server ids, ascending
};

struct Catalog {
  std::vector<VnfSpec> vnfs;              // indexed by vnf id
  std::vector<ServiceChainSpec> services;  // indexed by service id

  const ServiceChainSpec& chain_of(int vnf) const {
    return services.at(static_cast<std::size_t>(vnfs.at(static_cast<std::size_t>(vnf)).service));
  }
  bool is_ingress(int vnf) const { return vnfs.at(static_cast<std::size_t>(vnf)).position == 1; }
  bool is_terminal(int vnf) const {
    const auto& v = vnfs.at(static_cast<std::size_t>(vnf));
    return v.position == static_cast<int>(chain_of(vnf).vnfs.size());
  }
  int ingress_of(int service) const {
    return services.at(static_cast<std::size_t>(service)).vnfs.front();
  }
};

// Per-slot service rate for a given allocation: min(phi_max, theta . alloc).
// Throws std::invalid_argument if alloc is not one of the VNF's options.
int service_rate(const VnfSpec& vnf, const ResourceVec& alloc);

// (upstream, downstream) neighbours of a VNF within its chain; nullopt at the
// chain ends. Throws std::out_of_range for an unknown VNF id.
std::pair<std::optional<int>, std::optional<int>> chain_neighbors(const Catalog& catalog, int vnf);

// Structural checks: every VNF placed somewhere, placement maps mutually
// consistent, chains well-formed, options contain the zero vector, resource
// dimensions agree. Returns human-readable violations; empty means valid.
std::vector<std::string> validate_model(const std::vector<Server>& servers,
                                        const Catalog& catalog,
                                        const Placement& placement);

}  // namespace poscars
