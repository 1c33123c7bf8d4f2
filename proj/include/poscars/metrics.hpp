#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "poscars/queue_engine.hpp"

namespace poscars {

enum class CostAccounting { Actual, Rate };

struct SlotMetrics {
  std::int64_t slot = 0;
  double m = 0.0;  // transfer cost
  double g = 0.0;  // allocation (energy) cost
  double h = 0.0;  // backlog potential, sampled between forwarding and processing
  int completions = 0;
  int pre_served = 0;
};

// Transfer cost of one slot's forwarding. Actual mode prices the requests
// that really moved; Rate mode prices the nominal service rate behind each
// carry, matching the analytical cost definition.
double slot_comm_cost(std::span<const LinkFlow> flows, const CommCostMatrix& comm,
                      CostAccounting mode);

// Allocation cost: unit price of each server dotted with what it granted.
double slot_energy_cost(const std::vector<int>& alloc, const Model& m);

// Drift bound of the backlog potential under admissible parameters:
//   B = 1/2 K a^2 (1 + (D+1)^2)
//     + (alpha/2) K b (((D+1)^2 a^2 + phi^2) + (b^2 phi^2 + phi^2))
// with K services, per-slot arrivals <= a, window depth <= D, at most b
// instances per VNF and service rates <= phi.
double drift_bound_B(long long services, long long a_max, long long window_max,
                     long long instances_max, long long phi_max, double alpha);
double drift_bound_B(const Model& m, long long a_max, double alpha);

// Slots from completion back to true arrival, zero when pre-served. Throws
// for phantoms and uncompleted requests; callers filter those out.
double response_time_ms(const RequestRecord& r, double slot_ms);

struct Aggregate {
  double mean = 0.0;
  double stddev = 0.0;  // sample std across replications
};

struct RunSummary {
  std::int64_t slots = 0;
  double time_avg_cost = 0.0;  // mean of m + gamma * g over counted slots
  double time_avg_h = 0.0;
  double time_avg_comm = 0.0;
  double time_avg_energy = 0.0;
  long long completed = 0;   // real completions in the counted range
  long long pre_served = 0;
  double resp_mean_ms = 0.0;
  double resp_p50_ms = 0.0;
  double resp_p95_ms = 0.0;
  double resp_p99_ms = 0.0;
};

// Time averages over slots at or after `warmup`, response statistics over
// completed real requests that arrived at or after `warmup`.
RunSummary summarize(std::span<const SlotMetrics> slots, const RequestRegistry& registry,
                     double gamma, std::int64_t warmup, double slot_ms);

double percentile_nearest_rank(std::vector<double> values, double pct);

Aggregate aggregate(std::span<const double> values);

}  // namespace poscars
