#include "poscars/sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <set>

namespace poscars {

Model build_scenario_model(const SimulationConfig& cfg) {
  if (cfg.explicit_model) return *cfg.explicit_model;
  GenSpec gen = cfg.gen;
  gen.force_window_one = is_learned(cfg.forecaster.kind);
  // window draws ride the run seed so replications sample them afresh
  return build_model(gen, cfg.model_seed, derive_seed(cfg.seed, "win"));
}

std::vector<ArrivalTrace> build_traces(const SimulationConfig& cfg, const Model& m,
                                       std::uint64_t run_seed) {
  const std::size_t services = m.catalog.services.size();
  std::vector<ArrivalTrace> traces;
  traces.reserve(services);
  if (cfg.workload.kind == WorkloadSpec::Kind::Poisson) {
    std::int64_t window_max = 0;
    for (const auto& s : m.catalog.services) {
      window_max = std::max<std::int64_t>(window_max, s.window_size);
    }
    std::int64_t need = cfg.horizon + window_max + 1;
    for (std::size_t k = 0; k < services; ++k) {
      traces.push_back(generate_poisson(cfg.workload.rate, need,
                                        derive_seed(run_seed, "arrivals", k), cfg.a_max,
                                        cfg.slot_ms));
    }
  } else {
    if (cfg.workload.traces.empty()) throw ConfigError("workload: no trace files given");
    if (cfg.workload.traces.size() != 1 && cfg.workload.traces.size() != services) {
      throw ConfigError("workload: need one trace file, or one per service");
    }
    for (std::size_t k = 0; k < services; ++k) {
      const std::string& path =
          cfg.workload.traces[cfg.workload.traces.size() == 1 ? 0 : k];
      traces.push_back(load_trace(path, cfg.workload.trace_mode, cfg.slot_ms, cfg.a_max));
      if (static_cast<std::int64_t>(traces.back().counts.size()) < cfg.horizon) {
        throw ConfigError("workload: trace " + path + " shorter than the horizon");
      }
    }
  }
  return traces;
}

namespace {

// Slot-by-slot recurrence and conservation checks, active in validate mode.
class Auditor {
 public:
  Auditor(const Model& m, const ControlParams& params) : m_(m), params_(params) {}

  void before_apply(const QueueSystem& qs, const DecisionSet& d) {
    const int n = m_.index.count();
    q_pre_.assign(static_cast<std::size_t>(n), 0);
    arrivals_.assign(static_cast<std::size_t>(n), 0);
    nominal_in_.assign(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) q_pre_[static_cast<std::size_t>(i)] = qs.queue_len(i);
    qp_pre_.assign(m_.catalog.services.size(), 0);
    delta_.assign(m_.catalog.services.size(), 0);
    for (std::size_t k = 0; k < m_.catalog.services.size(); ++k) {
      qp_pre_[k] = qs.qp(static_cast<int>(k));
      for (const auto& [server, count] : d.admit[k]) {
        delta_[k] += count;
        int iid = m_.index.id_of(m_.catalog.ingress_of(static_cast<int>(k)), server);
        arrivals_[static_cast<std::size_t>(iid)] += count;
        nominal_in_[static_cast<std::size_t>(iid)] += count;
      }
    }
    for (int i = 0; i < n; ++i) {
      const auto& ref = m_.index.instances[static_cast<std::size_t>(i)];
      if (m_.catalog.is_terminal(ref.vnf)) continue;
      auto [up, down] = chain_neighbors(m_.catalog, ref.vnf);
      (void)up;
      bool first = true;
      for (const auto& b : d.forward[static_cast<std::size_t>(i)]) {
        int succ = m_.index.id_of(*down, b.target_server);
        arrivals_[static_cast<std::size_t>(succ)] += b.count;
        if (first) nominal_in_[static_cast<std::size_t>(succ)] += qs.carry_nominal(i);
        first = false;
      }
    }
  }

  void before_processing(const QueueSystem& qs) {
    const int n = m_.index.count();
    fifo_front_.assign(static_cast<std::size_t>(n), {});
    for (int i = 0; i < n; ++i) {
      const auto& q = qs.queue(i).backlog;
      fifo_front_[static_cast<std::size_t>(i)].assign(q.begin(), q.end());
    }
  }

  void after_processing(const QueueSystem& qs, const DecisionSet& d,
                        const ProcessOutcome& outcome) {
    const int n = m_.index.count();
    for (int i = 0; i < n; ++i) {
      const auto& ref = m_.index.instances[static_cast<std::size_t>(i)];
      const auto& vnf = m_.catalog.vnfs[static_cast<std::size_t>(ref.vnf)];
      int rate = service_rate(
          vnf, vnf.options[static_cast<std::size_t>(d.alloc[static_cast<std::size_t>(i)])]);
      long long expect = std::max<long long>(
          0, q_pre_[static_cast<std::size_t>(i)] + arrivals_[static_cast<std::size_t>(i)] - rate);
      if (qs.queue_len(i) != expect) {
        throw SimError("audit: backlog recurrence broken at instance " + std::to_string(i));
      }
      // The rate-based bound assumes every inflow rides its nominal rate,
      // which batch-splitting forwarders break; only check when it holds.
      if (nominal_in_[static_cast<std::size_t>(i)] >= arrivals_[static_cast<std::size_t>(i)]) {
        long long loose = std::max<long long>(
            0,
            q_pre_[static_cast<std::size_t>(i)] + nominal_in_[static_cast<std::size_t>(i)] - rate);
        if (qs.queue_len(i) > loose) {
          throw SimError("audit: rate-based backlog bound broken at instance " + std::to_string(i));
        }
      }
      if (qs.carry_len(i) > rate || qs.carry_len(i) > vnf.phi_max) {
        throw SimError("audit: carry exceeds the service rate at instance " + std::to_string(i));
      }
      // FIFO: what left must be exactly the head of the pre-processing queue
      const auto& took = outcome.processed[static_cast<std::size_t>(i)];
      const auto& head = fifo_front_[static_cast<std::size_t>(i)];
      if (took.size() > head.size() ||
          !std::equal(took.begin(), took.end(), head.begin())) {
        throw SimError("audit: FIFO order broken at instance " + std::to_string(i));
      }
    }
  }

  void after_advance(const QueueSystem& qs, std::span<const int> added) {
    for (std::size_t k = 0; k < m_.catalog.services.size(); ++k) {
      std::int64_t expect = qp_pre_[k] - delta_[k] + added[k];
      if (qs.qp(static_cast<int>(k)) != expect) {
        throw SimError("audit: prediction backlog recurrence broken for service " +
                       std::to_string(k));
      }
      const auto& w = qs.window(static_cast<int>(k));
      if (static_cast<int>(w.slots.size()) != w.window_size + 1) {
        throw SimError("audit: window depth changed for service " + std::to_string(k));
      }
      for (const auto& slot : w.slots) {
        if (static_cast<int>(slot.pending.size()) > slot.capacity) {
          throw SimError("audit: window slot holds more than was predicted");
        }
      }
    }
    // conservation: every request sits in exactly one place
    std::vector<char> seen(qs.registry().size(), 0);
    auto mark = [&](ReqId id) {
      if (seen[id]) throw SimError("audit: request appears in two places");
      seen[id] = 1;
    };
    for (std::size_t k = 0; k < m_.catalog.services.size(); ++k) {
      for (const auto& slot : qs.window(static_cast<int>(k)).slots) {
        for (ReqId id : slot.pending) mark(id);
      }
    }
    for (int i = 0; i < m_.index.count(); ++i) {
      for (ReqId id : qs.queue(i).backlog) mark(id);
      for (ReqId id : qs.queue(i).carry) mark(id);
    }
    for (std::size_t id = 0; id < qs.registry().size(); ++id) {
      const auto& r = qs.registry().at(static_cast<ReqId>(id));
      if (r.completed()) {
        if (seen[id]) throw SimError("audit: completed request still queued");
        seen[id] = 1;
      }
      if (!seen[id]) throw SimError("audit: request " + std::to_string(id) + " lost");
    }
  }

 private:
  const Model& m_;
  const ControlParams& params_;
  std::vector<long long> q_pre_, arrivals_, nominal_in_;
  std::vector<std::int64_t> qp_pre_, delta_;
  std::vector<std::vector<ReqId>> fifo_front_;
};

void dump_queue_state(std::ofstream& os, std::int64_t slot, const QueueSystem& qs,
                      const Model& m) {
  for (int i = 0; i < m.index.count(); ++i) {
    os << slot << ',' << i << ',' << qs.queue_len(i) << ',' << qs.carry_len(i) << '\n';
  }
}

}  // namespace

RunResult run_one(const SimulationConfig& cfg) {
  Model model = build_scenario_model(cfg);
  std::vector<ArrivalTrace> traces = build_traces(cfg, model, cfg.seed);
  const std::size_t services = model.catalog.services.size();

  std::vector<std::vector<int>> initial(services);
  for (std::size_t k = 0; k < services; ++k) {
    int d = model.catalog.services[k].window_size;
    for (int j = 0; j <= d; ++j) initial[k].push_back(traces[k].at(j));
  }
  QueueSystem qs(model, cfg.forecaster, derive_seed(cfg.seed, "run"), initial);
  qs.set_audit(cfg.validate);

  auto strategy =
      make_strategy(cfg.control, cfg.strategy, derive_seed(cfg.seed, "strategy"));

  Auditor auditor(model, cfg.control);
  std::ofstream dump;
  if (!cfg.dump_queues.empty()) {
    dump.open(cfg.dump_queues);
    if (!dump) throw ConfigError("cannot open queue dump file " + cfg.dump_queues);
    dump << "slot,instance,backlog,carry\n";
  }

  RunResult out;
  out.slots.reserve(static_cast<std::size_t>(cfg.horizon));
  std::vector<int> truth_far(services, 0);
  for (std::int64_t t = 0; t < cfg.horizon; ++t) {
    if (cfg.jitter_per_slot) {
      model.comm = comm_cost_matrix(HopMatrix{model.comm.hops}, cfg.gen.base_cost,
                                    cfg.gen.variation, derive_seed(cfg.seed, "jitter", t));
    }
    DecisionSet d = strategy->decide(model, qs, t);
    if (cfg.record_decisions) out.decisions.push_back(d);
    if (cfg.validate) auditor.before_apply(qs, d);

    qs.apply_admission(d);
    std::vector<LinkFlow> flows = qs.apply_forwarding(d);
    if (cfg.validate) auditor.before_processing(qs);
    double h = qs.total_queue_snapshot(cfg.control.alpha);
    double m_cost = slot_comm_cost(flows, model.comm, cfg.accounting);
    ProcessOutcome outcome = qs.apply_processing(d, t);
    if (cfg.validate) auditor.after_processing(qs, d, outcome);
    double g_cost = slot_energy_cost(d.alloc, model);

    for (std::size_t k = 0; k < services; ++k) {
      truth_far[k] = traces[k].at(t + 1 + model.catalog.services[k].window_size);
    }
    std::vector<int> added = qs.advance_windows(truth_far, t + 1);
    if (cfg.validate) auditor.after_advance(qs, added);
    if (dump.is_open()) dump_queue_state(dump, t, qs, model);

    out.slots.push_back(SlotMetrics{t, m_cost, g_cost, h, outcome.completions,
                                    outcome.pre_served});
  }

  out.summary = summarize(out.slots, qs.registry(), cfg.control.gamma, cfg.warmup, cfg.slot_ms);
  out.responses.reserve(static_cast<std::size_t>(out.summary.completed));
  for (const auto& r : qs.registry().all()) {
    if (r.phantom || !r.completed() || r.arrival_slot < cfg.warmup) continue;
    out.responses.push_back(response_time_ms(r, cfg.slot_ms));
  }
  return out;
}

ReplicateResult replicate(const SimulationConfig& cfg, int threads) {
  if (cfg.replications < 1) throw ConfigError("replications must be >= 1");
  if (threads < 1) threads = 1;

  std::vector<RunResult> runs(static_cast<std::size_t>(cfg.replications));
  std::vector<SimulationConfig> cfgs(static_cast<std::size_t>(cfg.replications), cfg);
  for (int i = 0; i < cfg.replications; ++i) {
    cfgs[static_cast<std::size_t>(i)].seed = cfg.seed + static_cast<std::uint64_t>(i);
  }
  if (threads == 1) {
    for (int i = 0; i < cfg.replications; ++i) {
      runs[static_cast<std::size_t>(i)] = run_one(cfgs[static_cast<std::size_t>(i)]);
    }
  } else {
    std::size_t next = 0;
    while (next < runs.size()) {
      std::size_t stop = std::min(runs.size(), next + static_cast<std::size_t>(threads));
      std::vector<std::future<RunResult>> batch;
      for (std::size_t i = next; i < stop; ++i) {
        batch.push_back(std::async(std::launch::async,
                                   [&cfgs, i]() { return run_one(cfgs[i]); }));
      }
      for (std::size_t i = next; i < stop; ++i) runs[i] = batch[i - next].get();
      next = stop;
    }
  }

  ReplicateResult agg;
  std::vector<double> cost, h, resp, comm, energy;
  std::vector<double> pooled;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const RunSummary& s = runs[i].summary;
    agg.summaries.push_back(s);
    cost.push_back(s.time_avg_cost);
    h.push_back(s.time_avg_h);
    resp.push_back(s.resp_mean_ms);
    comm.push_back(s.time_avg_comm);
    energy.push_back(s.time_avg_energy);
    agg.completed += s.completed;
    agg.pre_served += s.pre_served;
    pooled.insert(pooled.end(), runs[i].responses.begin(), runs[i].responses.end());
  }
  agg.first_slots = std::move(runs.front().slots);
  agg.cost = aggregate(cost);
  agg.h = aggregate(h);
  agg.resp_mean = aggregate(resp);
  agg.comm = aggregate(comm);
  agg.energy = aggregate(energy);
  if (!pooled.empty()) {
    double sum = 0.0;
    for (double v : pooled) sum += v;
    agg.resp_mean_pooled = sum / static_cast<double>(pooled.size());
    agg.resp_p50 = percentile_nearest_rank(pooled, 50.0);
    agg.resp_p95 = percentile_nearest_rank(pooled, 95.0);
    agg.resp_p99 = percentile_nearest_rank(pooled, 99.0);
  }
  return agg;
}

}  // namespace poscars
