#include "poscars/domain.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace poscars {

bool fits(const ResourceVec& a, const ResourceVec& cap) {
  if (a.size() != cap.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > cap[i]) return false;
  }
  return true;
}

void add_inplace(ResourceVec& a, const ResourceVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("add_inplace: size mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

long long dot(const ResourceVec& a, const ResourceVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += static_cast<long long>(a[i]) * b[i];
  }
  return s;
}

bool lex_less(const ResourceVec& a, const ResourceVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

int service_rate(const VnfSpec& vnf, const ResourceVec& alloc) {
  bool known = false;
  for (const auto& o : vnf.options) {
    if (o == alloc) {
      known = true;
      break;
    }
  }
  if (!known) throw std::invalid_argument("service_rate: allocation is not an option of this VNF");
  long long linear = dot(vnf.theta, alloc);
  return static_cast<int>(std::min<long long>(vnf.phi_max, linear));
}

std::pair<std::optional<int>, std::optional<int>> chain_neighbors(const Catalog& catalog, int vnf) {
  if (vnf < 0 || vnf >= static_cast<int>(catalog.vnfs.size())) {
    throw std::out_of_range("chain_neighbors: unknown vnf id");
  }
  const VnfSpec& v = catalog.vnfs[static_cast<std::size_t>(vnf)];
  const auto& chain = catalog.services.at(static_cast<std::size_t>(v.service)).vnfs;
  std::optional<int> up, down;
  if (v.position > 1) up = chain[static_cast<std::size_t>(v.position) - 2];
  if (v.position < static_cast<int>(chain.size())) down = chain[static_cast<std::size_t>(v.position)];
  return {up, down};
}

std::vector<std::string> validate_model(const std::vector<Server>& servers,
                                        const Catalog& catalog,
                                        const Placement& placement) {
  std::vector<std::string> out;
  auto complain = [&out](const std::string& msg) { out.push_back(msg); };

  std::size_t rtypes = servers.empty() ? 0 : servers[0].capacity.size();
  for (const auto& s : servers) {
    if (s.capacity.size() != rtypes || s.unit_cost.size() != rtypes) {
      complain("server " + std::to_string(s.id) + ": resource dimension mismatch");
    }
    for (int c : s.capacity) {
      if (c < 0) complain("server " + std::to_string(s.id) + ": negative capacity");
    }
    for (int c : s.unit_cost) {
      if (c < 0) complain("server " + std::to_string(s.id) + ": negative unit cost");
    }
  }

  for (std::size_t k = 0; k < catalog.services.size(); ++k) {
    const auto& chain = catalog.services[k];
    if (chain.id != static_cast<int>(k)) complain("service " + std::to_string(k) + ": id out of order");
    if (chain.vnfs.size() < 2) complain("service " + std::to_string(k) + ": chain shorter than 2");
    if (chain.window_size < 0) complain("service " + std::to_string(k) + ": negative window");
    for (std::size_t p = 0; p < chain.vnfs.size(); ++p) {
      int f = chain.vnfs[p];
      if (f < 0 || f >= static_cast<int>(catalog.vnfs.size())) {
        complain("service " + std::to_string(k) + ": vnf id out of range");
        continue;
      }
      const auto& v = catalog.vnfs[static_cast<std::size_t>(f)];
      if (v.service != static_cast<int>(k) || v.position != static_cast<int>(p) + 1) {
        complain("vnf " + std::to_string(f) + ": chain membership inconsistent");
      }
    }
  }

  std::set<int> used;
  for (const auto& chain : catalog.services) {
    for (int f : chain.vnfs) {
      if (!used.insert(f).second) complain("vnf " + std::to_string(f) + ": appears in two chains");
    }
  }
  for (std::size_t f = 0; f < catalog.vnfs.size(); ++f) {
    if (!used.count(static_cast<int>(f))) complain("vnf " + std::to_string(f) + ": not in any chain");
    const auto& v = catalog.vnfs[f];
    if (v.id != static_cast<int>(f)) complain("vnf " + std::to_string(f) + ": id out of order");
    if (v.phi_max <= 0) complain("vnf " + std::to_string(f) + ": phi_max must be positive");
    if (v.theta.size() != rtypes) complain("vnf " + std::to_string(f) + ": theta dimension mismatch");
    bool has_zero = false;
    for (const auto& o : v.options) {
      if (o.size() != rtypes) complain("vnf " + std::to_string(f) + ": option dimension mismatch");
      bool zero = true;
      for (int x : o) {
        if (x < 0) complain("vnf " + std::to_string(f) + ": negative option entry");
        if (x != 0) zero = false;
      }
      if (zero) has_zero = true;
    }
    if (!has_zero) complain("vnf " + std::to_string(f) + ": options lack the zero allocation");
  }

  if (placement.hosted.size() != servers.size()) {
    complain("placement: hosted size != server count");
  }
  if (placement.hosts.size() != catalog.vnfs.size()) {
    complain("placement: hosts size != vnf count");
  }

  // mutual consistency of the two maps
  for (std::size_t s = 0; s < placement.hosted.size(); ++s) {
    for (int f : placement.hosted[s]) {
      if (f < 0 || f >= static_cast<int>(placement.hosts.size())) {
        complain("placement: hosted refers to unknown vnf " + std::to_string(f));
        continue;
      }
      const auto& hs = placement.hosts[static_cast<std::size_t>(f)];
      if (!std::count(hs.begin(), hs.end(), static_cast<int>(s))) {
        complain("placement: hosted/hosts disagree for vnf " + std::to_string(f));
      }
    }
  }
  for (std::size_t f = 0; f < placement.hosts.size(); ++f) {
    if (placement.hosts[f].empty()) {
      complain("vnf " + std::to_string(f) + ": placed on no server");
    }
    std::set<int> seen;
    for (int s : placement.hosts[f]) {
      if (s < 0 || s >= static_cast<int>(placement.hosted.size())) {
        complain("placement: hosts refers to unknown server " + std::to_string(s));
        continue;
      }
      if (!seen.insert(s).second) complain("vnf " + std::to_string(f) + ": duplicate host");
      const auto& hf = placement.hosted[static_cast<std::size_t>(s)];
      if (!std::count(hf.begin(), hf.end(), static_cast<int>(f))) {
        complain("placement: hosts/hosted disagree for vnf " + std::to_string(f));
      }
    }
  }
  return out;
}

}  // namespace poscars
