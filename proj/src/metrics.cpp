#include "poscars/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace poscars {

double slot_comm_cost(std::span<const LinkFlow> flows, const CommCostMatrix& comm,
                      CostAccounting mode) {
  double total = 0.0;
  for (const auto& f : flows) {
    int amount = mode == CostAccounting::Actual ? f.count : f.nominal;
    if (amount == 0) continue;
    double w = comm.cost[static_cast<std::size_t>(f.from)][static_cast<std::size_t>(f.to)];
    if (!std::isfinite(w)) throw SimError("forwarded across an unreachable link");
    total += amount * w;
  }
  return total;
}

double slot_energy_cost(const std::vector<int>& alloc, const Model& m) {
  double total = 0.0;
  for (int iid = 0; iid < m.index.count(); ++iid) {
    const auto& ref = m.index.instances[static_cast<std::size_t>(iid)];
    const auto& vnf = m.catalog.vnfs[static_cast<std::size_t>(ref.vnf)];
    const auto& option =
        vnf.options[static_cast<std::size_t>(alloc[static_cast<std::size_t>(iid)])];
    total += static_cast<double>(
        dot(m.servers[static_cast<std::size_t>(ref.server)].unit_cost, option));
  }
  return total;
}

double drift_bound_B(long long services, long long a_max, long long window_max,
                     long long instances_max, long long phi_max, double alpha) {
  if (services < 0 || a_max < 0 || window_max < 0 || instances_max < 0 || phi_max < 0) {
    throw std::invalid_argument("drift_bound_B: negative parameter");
  }
  double K = static_cast<double>(services);
  double a2 = static_cast<double>(a_max) * static_cast<double>(a_max);
  double dd = static_cast<double>(window_max + 1) * static_cast<double>(window_max + 1);
  double phi2 = static_cast<double>(phi_max) * static_cast<double>(phi_max);
  double b = static_cast<double>(instances_max);
  double first = 0.5 * (K * a2 + K * dd * a2);
  double second = 0.5 * alpha * K * b * (dd * a2 + phi2);
  double third = 0.5 * alpha * K * b * (b * b * phi2 + phi2);
  return first + second + third;
}

double drift_bound_B(const Model& m, long long a_max, double alpha) {
  long long window_max = 0;
  for (const auto& s : m.catalog.services) {
    window_max = std::max<long long>(window_max, s.window_size);
  }
  long long instances_max = 0;
  for (const auto& hs : m.placement.hosts) {
    instances_max = std::max<long long>(instances_max, static_cast<long long>(hs.size()));
  }
  long long phi_max = 0;
  for (const auto& v : m.catalog.vnfs) phi_max = std::max<long long>(phi_max, v.phi_max);
  return drift_bound_B(static_cast<long long>(m.catalog.services.size()), a_max, window_max,
                       instances_max, phi_max, alpha);
}

double response_time_ms(const RequestRecord& r, double slot_ms) {
  if (r.phantom) throw std::invalid_argument("response_time: phantom request");
  if (!r.completed()) throw std::invalid_argument("response_time: not completed");
  std::int64_t slots = r.completion_slot - r.arrival_slot;
  if (slots < 0) slots = 0;  // pre-served
  return static_cast<double>(slots) * slot_ms;
}

double percentile_nearest_rank(std::vector<double> values, double pct) {
  if (values.empty()) return 0.0;
  if (pct <= 0.0 || pct > 100.0) throw std::invalid_argument("percentile: pct in (0, 100]");
  std::sort(values.begin(), values.end());
  std::size_t rank = static_cast<std::size_t>(
      std::ceil(pct / 100.0 * static_cast<double>(values.size())));
  if (rank == 0) rank = 1;
  return values[rank - 1];
}

RunSummary summarize(std::span<const SlotMetrics> slots, const RequestRegistry& registry,
                     double gamma, std::int64_t warmup, double slot_ms) {
  RunSummary s;
  double cost = 0.0, h = 0.0, comm = 0.0, energy = 0.0;
  for (const auto& sm : slots) {
    if (sm.slot < warmup) continue;
    ++s.slots;
    cost += sm.m + gamma * sm.g;
    comm += sm.m;
    energy += sm.g;
    h += sm.h;
  }
  if (s.slots > 0) {
    s.time_avg_cost = cost / static_cast<double>(s.slots);
    s.time_avg_h = h / static_cast<double>(s.slots);
    s.time_avg_comm = comm / static_cast<double>(s.slots);
    s.time_avg_energy = energy / static_cast<double>(s.slots);
  }
  std::vector<double> resp;
  for (const auto& r : registry.all()) {
    if (r.phantom || !r.completed() || r.arrival_slot < warmup) continue;
    ++s.completed;
    if (r.completion_slot < r.arrival_slot) ++s.pre_served;
    resp.push_back(response_time_ms(r, slot_ms));
  }
  if (!resp.empty()) {
    double sum = 0.0;
    for (double v : resp) sum += v;
    s.resp_mean_ms = sum / static_cast<double>(resp.size());
    s.resp_p50_ms = percentile_nearest_rank(resp, 50.0);
    s.resp_p95_ms = percentile_nearest_rank(resp, 95.0);
    s.resp_p99_ms = percentile_nearest_rank(resp, 99.0);
  }
  return s;
}

Aggregate aggregate(std::span<const double> values) {
  Aggregate a;
  if (values.empty()) return a;
  double sum = 0.0;
  for (double v : values) sum += v;
  a.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - a.mean) * (v - a.mean);
    a.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return a;
}

}  // namespace poscars
