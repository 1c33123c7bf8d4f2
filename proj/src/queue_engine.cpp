#include "poscars/queue_engine.hpp"

#include <algorithm>
#include <string>

namespace poscars {

namespace {

std::string at_instance(const Model& m, int iid) {
  const auto& ref = m.index.instances[static_cast<std::size_t>(iid)];
  return "vnf " + std::to_string(ref.vnf) + " on server " + std::to_string(ref.server);
}

}  // namespace

QueueSystem::QueueSystem(const Model& model, const ForecasterSpec& forecaster, std::uint64_t seed,
                         const std::vector<std::vector<int>>& initial_truths)
    : model_(&model) {
  const std::size_t services = model.catalog.services.size();
  if (initial_truths.size() != services) {
    throw std::invalid_argument("queue system: initial truths per service required");
  }
  queues_.assign(static_cast<std::size_t>(model.index.count()), {});
  forecasters_.reserve(services);
  windows_.reserve(services);
  for (std::size_t k = 0; k < services; ++k) {
    forecasters_.emplace_back(forecaster, derive_seed(seed, "forecast", k));
    int d = model.catalog.services[k].window_size;
    windows_.push_back(init_window(static_cast<int>(k), d, initial_truths[k],
                                   forecasters_.back(), registry_));
  }
}

std::vector<int> QueueSystem::split_earliest_first(const PredictionWindow& w, std::int64_t total) {
  std::vector<int> by_depth(w.slots.size(), 0);
  std::int64_t left = total;
  for (std::size_t d = 0; d < w.slots.size() && left > 0; ++d) {
    int take = static_cast<int>(std::min<std::int64_t>(
        left, static_cast<std::int64_t>(w.slots[d].pending.size())));
    by_depth[d] = take;
    left -= take;
  }
  if (left > 0) throw SimError("admission split exceeds the prediction backlog");
  return by_depth;
}

void QueueSystem::apply_admission(const DecisionSet& d) {
  const Model& m = *model_;
  const std::size_t services = m.catalog.services.size();
  if (d.admit.size() != services || d.admit_depth.size() != services) {
    throw SimError("admission decision has wrong service count");
  }
  for (std::size_t k = 0; k < services; ++k) {
    PredictionWindow& w = windows_[k];
    std::int64_t delta = 0;
    for (const auto& [server, count] : d.admit[k]) {
      if (count < 0) throw SimError("negative admission count");
      delta += count;
    }
    std::int64_t depth_sum = 0;
    if (d.admit_depth[k].size() > w.slots.size()) {
      throw SimError("admission depth split longer than the window");
    }
    for (std::size_t depth = 0; depth < d.admit_depth[k].size(); ++depth) {
      int take = d.admit_depth[k][depth];
      if (take < 0) throw SimError("negative admission depth entry");
      if (take > static_cast<int>(w.slots[depth].pending.size())) {
        throw SimError("admission pulls more than slot " + std::to_string(depth) + " holds");
      }
      depth_sum += take;
    }
    if (depth_sum != delta) throw SimError("admission depth split does not sum to the total");
    if (delta < w.q0()) throw SimError("admission below the untreated arrivals (service " +
                                       std::to_string(k) + ")");
    if (delta > w.qp()) throw SimError("admission beyond the prediction backlog (service " +
                                       std::to_string(k) + ")");

    // earliest-first drain, FIFO inside each slot
    std::vector<ReqId> drained;
    drained.reserve(static_cast<std::size_t>(delta));
    for (std::size_t depth = 0; depth < d.admit_depth[k].size(); ++depth) {
      int take = d.admit_depth[k][depth];
      auto& pending = w.slots[depth].pending;
      drained.insert(drained.end(), pending.begin(), pending.begin() + take);
      pending.erase(pending.begin(), pending.begin() + take);
    }

    int ingress = m.catalog.ingress_of(static_cast<int>(k));
    std::size_t cursor = 0;
    // ascending server order keeps the mapping reproducible
    std::vector<std::pair<int, int>> targets = d.admit[k];
    std::sort(targets.begin(), targets.end());
    for (const auto& [server, count] : targets) {
      int iid = m.index.id_of(ingress, server);  // throws if not an ingress host
      auto& q = queues_[static_cast<std::size_t>(iid)].backlog;
      for (int i = 0; i < count; ++i) q.push_back(drained[cursor++]);
    }
  }
}

std::vector<LinkFlow> QueueSystem::apply_forwarding(const DecisionSet& d) {
  const Model& m = *model_;
  if (d.forward.size() != static_cast<std::size_t>(m.index.count())) {
    throw SimError("forwarding decision has wrong instance count");
  }
  std::vector<LinkFlow> flows;
  for (int iid = 0; iid < m.index.count(); ++iid) {
    const auto& ref = m.index.instances[static_cast<std::size_t>(iid)];
    const auto& batches = d.forward[static_cast<std::size_t>(iid)];
    InstanceQueue& q = queues_[static_cast<std::size_t>(iid)];
    if (m.catalog.is_terminal(ref.vnf)) {
      if (!batches.empty()) throw SimError("terminal " + at_instance(m, iid) + " cannot forward");
      if (!q.carry.empty()) throw SimError("terminal " + at_instance(m, iid) + " holds carryover");
      continue;
    }
    int carry = static_cast<int>(q.carry.size());
    std::int64_t covered = 0;
    for (const auto& b : batches) {
      if (b.count < 0) throw SimError("negative batch count");
      covered += b.count;
    }
    if (covered != carry) {
      throw SimError("forwarding for " + at_instance(m, iid) + " covers " +
                     std::to_string(covered) + " of " + std::to_string(carry) + " carried");
    }
    if (batches.empty()) {
      if (q.carry_nominal != 0) q.carry_nominal = 0;
      continue;
    }
    auto [up, down] = chain_neighbors(m.catalog, ref.vnf);
    (void)up;
    if (!down) throw SimError("no downstream vnf for " + at_instance(m, iid));
    std::size_t cursor = 0;
    bool first = true;
    for (const auto& b : batches) {
      m.index.id_of(*down, b.target_server);  // validates the target hosts the successor
      auto& target =
          queues_[static_cast<std::size_t>(m.index.id_of(*down, b.target_server))].backlog;
      for (int i = 0; i < b.count; ++i) target.push_back(q.carry[cursor++]);
      // nominal (rate-based) amount rides on the first designated target
      flows.push_back(LinkFlow{ref.server, b.target_server, b.count,
                               first ? q.carry_nominal : 0});
      first = false;
    }
    q.carry.clear();
    q.carry_nominal = 0;
  }
  return flows;
}

ProcessOutcome QueueSystem::apply_processing(const DecisionSet& d, std::int64_t slot) {
  const Model& m = *model_;
  if (d.alloc.size() != static_cast<std::size_t>(m.index.count())) {
    throw SimError("allocation decision has wrong instance count");
  }
  // capacity check per server before anything is served
  for (std::size_t s = 0; s < m.servers.size(); ++s) {
    ResourceVec used(m.servers[s].capacity.size(), 0);
    for (int iid : m.index.on_server[s]) {
      const auto& ref = m.index.instances[static_cast<std::size_t>(iid)];
      const auto& vnf = m.catalog.vnfs[static_cast<std::size_t>(ref.vnf)];
      int opt = d.alloc[static_cast<std::size_t>(iid)];
      if (opt < 0 || opt >= static_cast<int>(vnf.options.size())) {
        throw SimError("allocation option out of range for " + at_instance(m, iid));
      }
      add_inplace(used, vnf.options[static_cast<std::size_t>(opt)]);
    }
    if (!fits(used, m.servers[s].capacity)) {
      throw SimError("allocation exceeds capacity of server " + std::to_string(s));
    }
  }

  ProcessOutcome out;
  if (audit_) out.processed.assign(static_cast<std::size_t>(m.index.count()), {});
  for (int iid = 0; iid < m.index.count(); ++iid) {
    const auto& ref = m.index.instances[static_cast<std::size_t>(iid)];
    const auto& vnf = m.catalog.vnfs[static_cast<std::size_t>(ref.vnf)];
    const ResourceVec& option =
        vnf.options[static_cast<std::size_t>(d.alloc[static_cast<std::size_t>(iid)])];
    int rate = service_rate(vnf, option);
    InstanceQueue& q = queues_[static_cast<std::size_t>(iid)];
    if (!q.carry.empty()) {
      throw SimError("processing before forwarding cleared " + at_instance(m, iid));
    }
    int served = std::min<int>(rate, static_cast<int>(q.backlog.size()));
    bool terminal = m.catalog.is_terminal(ref.vnf);
    for (int i = 0; i < served; ++i) {
      ReqId id = q.backlog.front();
      q.backlog.pop_front();
      if (audit_) out.processed[static_cast<std::size_t>(iid)].push_back(id);
      if (terminal) {
        RequestRecord& r = registry_.at(id);
        r.completion_slot = slot;
        ++out.completions;
        if (!r.phantom && slot < r.arrival_slot) ++out.pre_served;
      } else {
        q.carry.push_back(id);
      }
    }
    q.carry_nominal = terminal ? 0 : rate;
  }
  return out;
}

std::vector<int> QueueSystem::advance_windows(std::span<const int> truth_far,
                                              std::int64_t new_now) {
  if (truth_far.size() != windows_.size()) {
    throw std::invalid_argument("advance_windows: one truth per service required");
  }
  std::vector<int> added(windows_.size(), 0);
  for (std::size_t k = 0; k < windows_.size(); ++k) {
    added[k] = advance_window(windows_[k], truth_far[k], forecasters_[k], registry_, new_now);
  }
  return added;
}

double QueueSystem::total_queue_snapshot(double alpha) const {
  std::int64_t pred = 0;
  for (const auto& w : windows_) pred += w.qp();
  return static_cast<double>(pred) + alpha * static_cast<double>(total_backlog());
}

std::int64_t QueueSystem::total_backlog() const {
  std::int64_t n = 0;
  for (const auto& q : queues_) n += static_cast<std::int64_t>(q.backlog.size());
  return n;
}

ReqId QueueSystem::seed_backlog_request(int instance, int service, std::int64_t arrival) {
  ReqId id = registry_.create(service, arrival, false, false);
  queues_[static_cast<std::size_t>(instance)].backlog.push_back(id);
  return id;
}

ReqId QueueSystem::seed_carry_request(int instance, int service, std::int64_t arrival) {
  ReqId id = registry_.create(service, arrival, false, false);
  auto& q = queues_[static_cast<std::size_t>(instance)];
  q.carry.push_back(id);
  if (q.carry_nominal < static_cast<int>(q.carry.size())) {
    q.carry_nominal = static_cast<int>(q.carry.size());
  }
  return id;
}

void QueueSystem::set_carry_nominal(int instance, int rate) {
  queues_[static_cast<std::size_t>(instance)].carry_nominal = rate;
}

}  // namespace poscars
