#include "poscars/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace poscars {

AdmissionDecision decide_admission(const Model& m, const QueueSystem& qs,
                                   const ControlParams& p) {
  AdmissionDecision out;
  const std::size_t services = m.catalog.services.size();
  out.admit.resize(services);
  out.admit_depth.resize(services);
  for (std::size_t k = 0; k < services; ++k) {
    int ingress = m.catalog.ingress_of(static_cast<int>(k));
    const auto& iids = m.index.of_vnf[static_cast<std::size_t>(ingress)];
    long long qmin = 0;
    bool first = true;
    for (int iid : iids) {
      long long len = qs.queue_len(iid);
      if (first || len < qmin) qmin = len;
      first = false;
    }
    std::vector<int> best;  // server ids, ascending by construction
    for (int iid : iids) {
      if (qs.queue_len(iid) == qmin) {
        best.push_back(m.index.instances[static_cast<std::size_t>(iid)].server);
      }
    }
    const PredictionWindow& w = qs.window(static_cast<int>(k));
    std::int64_t qp = w.qp();
    std::int64_t delta =
        (p.alpha * static_cast<double>(qmin) > static_cast<double>(qp)) ? w.q0() : qp;

    // even split, remainder to the lowest server ids
    int n = static_cast<int>(best.size());
    std::int64_t base = delta / n;
    int extra = static_cast<int>(delta % n);
    for (int i = 0; i < n; ++i) {
      int count = static_cast<int>(base) + (i < extra ? 1 : 0);
      if (count > 0) out.admit[k].emplace_back(best[static_cast<std::size_t>(i)], count);
    }
    out.admit_depth[k] = QueueSystem::split_earliest_first(w, delta);
  }
  return out;
}

std::vector<std::vector<Batch>> decide_chaining(const Model& m, const QueueSystem& qs,
                                                const ControlParams& p) {
  std::vector<std::vector<Batch>> out(static_cast<std::size_t>(m.index.count()));
  for (int iid = 0; iid < m.index.count(); ++iid) {
    const auto& ref = m.index.instances[static_cast<std::size_t>(iid)];
    if (m.catalog.is_terminal(ref.vnf)) continue;
    auto [up, down] = chain_neighbors(m.catalog, ref.vnf);
    (void)up;
    int best_server = -1;
    double best_score = 0.0;
    for (int succ : m.index.of_vnf[static_cast<std::size_t>(*down)]) {
      int server = m.index.instances[static_cast<std::size_t>(succ)].server;
      double w = m.comm.cost[static_cast<std::size_t>(ref.server)][static_cast<std::size_t>(server)];
      if (!std::isfinite(w)) continue;
      double score = p.V * w + p.alpha * static_cast<double>(qs.queue_len(succ));
      if (best_server < 0 || score < best_score) {  // successor ids ascend by server
        best_server = server;
        best_score = score;
      }
    }
    if (best_server < 0) {
      throw SimError("no reachable successor for vnf " + std::to_string(ref.vnf) +
                     " from server " + std::to_string(ref.server));
    }
    out[static_cast<std::size_t>(iid)].push_back(Batch{best_server, qs.carry_len(iid)});
  }
  return out;
}

double net_cost(const ControlParams& p, const ResourceVec& unit_cost, long long queue,
                const VnfSpec& vnf, const ResourceVec& option) {
  double price = p.V * p.gamma * static_cast<double>(dot(unit_cost, option));
  double relief = p.alpha * static_cast<double>(queue) *
                  static_cast<double>(service_rate(vnf, option));
  return price - relief;
}

std::vector<int> decide_allocation(const Model& m, const QueueSystem& qs,
                                   const ControlParams& p) {
  std::vector<int> out(static_cast<std::size_t>(m.index.count()), 0);
  for (int iid = 0; iid < m.index.count(); ++iid) {
    const auto& ref = m.index.instances[static_cast<std::size_t>(iid)];
    out[static_cast<std::size_t>(iid)] = m.zero_option(ref.vnf);
  }

  struct Candidate {
    double r;
    int vnf;
    int option;
    int iid;
  };
  for (std::size_t s = 0; s < m.servers.size(); ++s) {
    std::vector<Candidate> table;
    for (int iid : m.index.on_server[s]) {
      const auto& ref = m.index.instances[static_cast<std::size_t>(iid)];
      const auto& vnf = m.catalog.vnfs[static_cast<std::size_t>(ref.vnf)];
      long long queue = qs.queue_len(iid);
      for (std::size_t o = 0; o < vnf.options.size(); ++o) {
        table.push_back(Candidate{
            net_cost(p, m.servers[s].unit_cost, queue, vnf, vnf.options[o]),
            ref.vnf, static_cast<int>(o), iid});
      }
    }
    std::sort(table.begin(), table.end(), [&m](const Candidate& a, const Candidate& b) {
      if (a.r != b.r) return a.r < b.r;
      if (a.vnf != b.vnf) return a.vnf < b.vnf;
      const auto& oa = m.catalog.vnfs[static_cast<std::size_t>(a.vnf)].options;
      return lex_less(oa[static_cast<std::size_t>(a.option)],
                      oa[static_cast<std::size_t>(b.option)]);
    });

    ResourceVec used(m.servers[s].capacity.size(), 0);
    std::vector<char> granted(m.catalog.vnfs.size(), 0);
    for (const auto& c : table) {
      if (granted[static_cast<std::size_t>(c.vnf)]) continue;
      if (!(c.r < 0.0)) break;  // sorted: nothing further can pay for itself
      const auto& option =
          m.catalog.vnfs[static_cast<std::size_t>(c.vnf)].options[static_cast<std::size_t>(c.option)];
      ResourceVec next = used;
      add_inplace(next, option);
      if (!fits(next, m.servers[s].capacity)) continue;
      used = next;
      granted[static_cast<std::size_t>(c.vnf)] = 1;
      out[static_cast<std::size_t>(c.iid)] = c.option;
    }
  }
  return out;
}

double slot_objective(const Model& m, const QueueSystem& qs, const DecisionSet& d,
                      const ControlParams& p) {
  double j = 0.0;
  for (std::size_t k = 0; k < m.catalog.services.size(); ++k) {
    int ingress = m.catalog.ingress_of(static_cast<int>(k));
    double qp = static_cast<double>(qs.qp(static_cast<int>(k)));
    for (const auto& [server, count] : d.admit[k]) {
      int iid = m.index.id_of(ingress, server);
      j += (-qp + p.alpha * static_cast<double>(qs.queue_len(iid))) * count;
    }
  }
  for (int iid = 0; iid < m.index.count(); ++iid) {
    const auto& ref = m.index.instances[static_cast<std::size_t>(iid)];
    const auto& vnf = m.catalog.vnfs[static_cast<std::size_t>(ref.vnf)];
    for (const auto& b : d.forward[static_cast<std::size_t>(iid)]) {
      auto [up, down] = chain_neighbors(m.catalog, ref.vnf);
      (void)up;
      int succ = m.index.id_of(*down, b.target_server);
      double w =
          m.comm.cost[static_cast<std::size_t>(ref.server)][static_cast<std::size_t>(b.target_server)];
      j += chaining_score(p.V, w, p.alpha, qs.queue_len(succ), b.count);
    }
    const auto& option =
        vnf.options[static_cast<std::size_t>(d.alloc[static_cast<std::size_t>(iid)])];
    j += net_cost(p, m.servers[static_cast<std::size_t>(ref.server)].unit_cost,
                  qs.queue_len(iid), vnf, option);
  }
  return j;
}

}  // namespace poscars
