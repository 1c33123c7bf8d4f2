#include "poscars/model.hpp"

#include <algorithm>
#include <string>

namespace poscars {

InstanceIndex build_instance_index(const Catalog& catalog, const Placement& placement) {
  InstanceIndex idx;
  idx.of_vnf.assign(catalog.vnfs.size(), {});
  std::size_t servers = placement.hosted.size();
  idx.on_server.assign(servers, {});
  for (std::size_t f = 0; f < placement.hosts.size(); ++f) {
    std::vector<int> hs = placement.hosts[f];
    std::sort(hs.begin(), hs.end());
    for (int s : hs) {
      int id = static_cast<int>(idx.instances.size());
      idx.instances.push_back(InstanceRef{static_cast<int>(f), s});
      idx.of_vnf[f].push_back(id);
      idx.on_server[static_cast<std::size_t>(s)].push_back(id);
      idx.lookup[{static_cast<int>(f), s}] = id;
    }
  }
  return idx;
}

int Model::zero_option(int vnf) const {
  const auto& opts = catalog.vnfs.at(static_cast<std::size_t>(vnf)).options;
  for (std::size_t i = 0; i < opts.size(); ++i) {
    bool zero = true;
    for (int x : opts[i]) zero = zero && x == 0;
    if (zero) return static_cast<int>(i);
  }
  throw std::logic_error("model: vnf lacks the zero allocation option");
}

Model assemble_model(std::vector<Server> servers, Catalog catalog, Placement placement,
                     CommCostMatrix comm) {
  auto violations = validate_model(servers, catalog, placement);
  if (static_cast<int>(comm.cost.size()) != static_cast<int>(servers.size())) {
    violations.push_back("comm matrix size != server count");
  }
  if (!violations.empty()) {
    std::string msg = "model invalid:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw std::invalid_argument(msg);
  }
  Model m;
  m.servers = std::move(servers);
  m.catalog = std::move(catalog);
  m.placement = std::move(placement);
  m.comm = std::move(comm);
  m.index = build_instance_index(m.catalog, m.placement);
  return m;
}

}  // namespace poscars
