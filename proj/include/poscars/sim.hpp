#pragma once

#include <memory>
#include <string>

#include "poscars/metrics.hpp"
#include "poscars/model_gen.hpp"
#include "poscars/strategies.hpp"

namespace poscars {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WorkloadSpec {
  enum class Kind { Poisson, Trace } kind = Kind::Poisson;
  double rate = 3.3;                // per service per slot
  std::vector<std::string> traces;  // one path, shared, or one per service
  TraceMode trace_mode = TraceMode::Counts;
};

// A fully resolved scenario. The model layout (topology, chains, placement,
// machine sizes) is pinned by model_seed so that replications share it; seed
// drives the per-run streams (arrivals, window draws, probing, forecaster
// sampling).
struct SimulationConfig {
  std::int64_t horizon = 10000;
  std::uint64_t seed = 1;
  std::uint64_t model_seed = 1;
  int replications = 1;
  std::int64_t warmup = 0;
  double slot_ms = 10.0;
  int a_max = 10000;
  bool validate = false;
  bool record_decisions = false;
  bool jitter_per_slot = false;
  CostAccounting accounting = CostAccounting::Actual;

  ControlParams control;
  StrategySpec strategy;
  ForecasterSpec forecaster;

  GenSpec gen;  // used unless an explicit model is supplied
  std::shared_ptr<const Model> explicit_model;

  WorkloadSpec workload;
  std::string dump_queues;  // per-slot queue state CSV path, empty = off
};

struct RunResult {
  std::vector<SlotMetrics> slots;
  RunSummary summary;
  std::vector<double> responses;  // ms, completed real requests
  std::vector<DecisionSet> decisions;
};

Model build_scenario_model(const SimulationConfig& cfg);
std::vector<ArrivalTrace> build_traces(const SimulationConfig& cfg, const Model& m,
                                       std::uint64_t run_seed);

// One simulation run. Slot order: decide, admit, forward, sample h, process,
// advance windows.
RunResult run_one(const SimulationConfig& cfg);

struct ReplicateResult {
  std::vector<RunSummary> summaries;
  std::vector<SlotMetrics> first_slots;  // replication 0
  Aggregate cost, h, resp_mean, comm, energy;
  // pooled over every replication's completed real requests
  double resp_mean_pooled = 0.0;
  double resp_p50 = 0.0;
  double resp_p95 = 0.0;
  double resp_p99 = 0.0;
  long long completed = 0;
  long long pre_served = 0;
};

// Runs with seeds seed, seed+1, ... while the model stays fixed; aggregates
// across replications. threads > 1 fans the runs out without changing any
// result.
ReplicateResult replicate(const SimulationConfig& cfg, int threads = 1);

}  // namespace poscars
