#pragma once

#include <cstdint>
#include <deque>
#include <span>
#include <string>
#include <vector>

#include "poscars/request.hpp"
#include "poscars/rng.hpp"

namespace poscars {

// Arrival counts for one service, one entry per slot.
struct ArrivalTrace {
  std::vector<int> counts;
  double slot_ms = 10.0;

  // zero beyond the recorded horizon
  int at(std::int64_t t) const {
    if (t < 0 || t >= static_cast<std::int64_t>(counts.size())) return 0;
    return counts[static_cast<std::size_t>(t)];
  }
};

ArrivalTrace generate_poisson(double rate, std::int64_t horizon, std::uint64_t seed,
                              int a_max, double slot_ms);

enum class TraceMode { Counts, Timestamps };

struct TraceParseError : std::runtime_error {
  int line;
  TraceParseError(const std::string& msg, int line_no)
      : std::runtime_error(msg), line(line_no) {}
};

// Counts mode: one non-negative integer per line. Timestamps mode: one
// arrival timestamp (milliseconds) per line, binned into slot_ms slots; a
// leading "timestamp_ms" header line is tolerated.
ArrivalTrace load_trace(const std::string& path, TraceMode mode, double slot_ms, int a_max);

// Per-service lookahead depths, uniform over {0, ..., 2*d_avg}.
std::vector<int> assign_window_sizes(int d_avg, int services, std::uint64_t seed);

enum class ForecastKind {
  Perfect,
  AllFalseNegative,
  FalsePositive,
  MovingAverage,
  Ewma,
  Kalman,
  DistributionEstimator,
};

struct ForecasterSpec {
  ForecastKind kind = ForecastKind::Perfect;
  double fp_rate = 0.0;        // mean phantom count per slot (FalsePositive)
  int ma_window = 5;           // MovingAverage
  double ewma_weight = 0.5;    // Ewma, weight on the newest observation
  double kalman_process_var = 1.0;
  double kalman_obs_var = 1.0;
  int distr_history = 100;     // DistributionEstimator history length
};

bool is_learned(ForecastKind k);
ForecastKind forecast_kind_from_string(const std::string& s);
std::string to_string(ForecastKind k);

// Per-service arrival forecaster. Learned variants build their estimate from
// observe() calls; predict() with no history returns 0.
class Forecaster {
 public:
  Forecaster(const ForecasterSpec& spec, std::uint64_t seed);

  int predict();
  void observe(int truth);
  const ForecasterSpec& spec() const { return spec_; }
  Rng& rng() { return rng_; }

 private:
  ForecasterSpec spec_;
  Rng rng_;
  std::deque<int> history_;
  double ewma_ = 0.0;
  double kalman_x_ = 0.0;
  double kalman_p_ = 0.0;
  bool primed_ = false;
};

// Stateless convenience form: feed the whole history, return the next
// forecast. Mirrors the streaming observe()/predict() path exactly.
int forecast_next(const ForecasterSpec& spec, std::span<const int> history, std::uint64_t seed);

// One lookahead slot. pending holds untreated entries in FIFO order; created
// remembers every entry ever produced for this arrival slot so that a late
// real/phantom resolution can retag entries that already left the window.
struct WindowSlot {
  std::int64_t arrival_slot = 0;
  int predicted = 0;  // entries created at prediction time
  int truth = 0;      // ground-truth arrivals (simulator-side knowledge)
  int capacity = 0;   // predicted plus late-materialized entries
  bool reconciled = false;
  std::vector<ReqId> pending;
  std::vector<ReqId> created;
};

// Prediction window of one service: slots[d] holds requests expected to
// arrive d slots from now (d = 0 is the current slot).
struct PredictionWindow {
  int service = 0;
  int window_size = 0;  // D_k
  std::deque<WindowSlot> slots;

  std::int64_t qp() const {
    std::int64_t n = 0;
    for (const auto& s : slots) n += static_cast<std::int64_t>(s.pending.size());
    return n;
  }
  int q0() const { return static_cast<int>(slots.front().pending.size()); }
};

// Window covering arrival slots 0..D; truths must supply those slots.
PredictionWindow init_window(int service, int window_size, std::span<const int> truths,
                             Forecaster& forecaster, RequestRegistry& registry);

// Slide the window one slot forward: drop the (fully drained) front, append a
// slot for arrival time now+D predicted from truth_far, then reconcile the
// new front against its ground truth (false-negative shortfalls materialize
// as fresh entries; false-positive surplus retags provisional entries).
// Returns how many pending entries the call added across the window.
int advance_window(PredictionWindow& w, int truth_far, Forecaster& forecaster,
                   RequestRegistry& registry, std::int64_t now);

}  // namespace poscars
