#include "poscars/workload.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace poscars {

ArrivalTrace generate_poisson(double rate, std::int64_t horizon, std::uint64_t seed,
                              int a_max, double slot_ms) {
  if (rate < 0) throw std::invalid_argument("generate_poisson: negative rate");
  if (horizon < 0) throw std::invalid_argument("generate_poisson: negative horizon");
  ArrivalTrace t;
  t.slot_ms = slot_ms;
  t.counts.resize(static_cast<std::size_t>(horizon));
  Rng rng(seed);
  for (auto& c : t.counts) c = std::min(rng.poisson(rate), a_max);
  return t;
}

ArrivalTrace load_trace(const std::string& path, TraceMode mode, double slot_ms, int a_max) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_trace: cannot open " + path);
  ArrivalTrace t;
  t.slot_ms = slot_ms;
  std::string line;
  int line_no = 0;
  if (mode == TraceMode::Counts) {
    while (std::getline(in, line)) {
      ++line_no;
      std::size_t pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos || line[pos] == '#') continue;
      try {
        std::size_t used = 0;
        long v = std::stol(line.substr(pos), &used);
        std::size_t rest = line.find_first_not_of(" \t\r", pos + used);
        if (rest != std::string::npos) throw std::invalid_argument("trailing characters");
        if (v < 0) throw std::invalid_argument("negative count");
        t.counts.push_back(static_cast<int>(std::min<long>(v, a_max)));
      } catch (const std::exception& e) {
        throw TraceParseError("load_trace: bad count at line " + std::to_string(line_no) +
                                  " of " + path + " (" + e.what() + ")",
                              line_no);
      }
    }
  } else {
    std::vector<double> stamps;
    while (std::getline(in, line)) {
      ++line_no;
      std::size_t pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos || line[pos] == '#') continue;
      std::string body = line.substr(pos);
      if (line_no == 1 && body.rfind("timestamp_ms", 0) == 0) continue;
      try {
        std::size_t used = 0;
        double v = std::stod(body, &used);
        std::size_t rest = body.find_first_not_of(" \t\r", used);
        if (rest != std::string::npos) throw std::invalid_argument("trailing characters");
        if (v < 0) throw std::invalid_argument("negative timestamp");
        stamps.push_back(v);
      } catch (const std::exception& e) {
        throw TraceParseError("load_trace: bad timestamp at line " + std::to_string(line_no) +
                                  " of " + path + " (" + e.what() + ")",
                              line_no);
      }
    }
    if (!stamps.empty()) {
      double last = *std::max_element(stamps.begin(), stamps.end());
      t.counts.assign(static_cast<std::size_t>(last / slot_ms) + 1, 0);
      for (double s : stamps) {
        auto& c = t.counts[static_cast<std::size_t>(s / slot_ms)];
        if (c < a_max) ++c;
      }
    }
  }
  if (t.counts.empty()) throw std::runtime_error("load_trace: empty trace in " + path);
  return t;
}

std::vector<int> assign_window_sizes(int d_avg, int services, std::uint64_t seed) {
  if (d_avg < 0) throw std::invalid_argument("assign_window_sizes: negative average");
  if (services < 0) throw std::invalid_argument("assign_window_sizes: negative count");
  Rng rng(derive_seed(seed, "window-sizes"));
  std::vector<int> out(static_cast<std::size_t>(services));
  for (auto& d : out) d = rng.uniform_int(0, 2 * d_avg);
  return out;
}

bool is_learned(ForecastKind k) {
  switch (k) {
    case ForecastKind::MovingAverage:
    case ForecastKind::Ewma:
    case ForecastKind::Kalman:
    case ForecastKind::DistributionEstimator:
      return true;
    default:
      return false;
  }
}

ForecastKind forecast_kind_from_string(const std::string& s) {
  if (s == "perfect") return ForecastKind::Perfect;
  if (s == "false-negative") return ForecastKind::AllFalseNegative;
  if (s == "false-positive") return ForecastKind::FalsePositive;
  if (s == "ma") return ForecastKind::MovingAverage;
  if (s == "ewma") return ForecastKind::Ewma;
  if (s == "kalman") return ForecastKind::Kalman;
  if (s == "distribution") return ForecastKind::DistributionEstimator;
  throw std::invalid_argument("unknown forecaster: " + s);
}

std::string to_string(ForecastKind k) {
  switch (k) {
    case ForecastKind::Perfect: return "perfect";
    case ForecastKind::AllFalseNegative: return "false-negative";
    case ForecastKind::FalsePositive: return "false-positive";
    case ForecastKind::MovingAverage: return "ma";
    case ForecastKind::Ewma: return "ewma";
    case ForecastKind::Kalman: return "kalman";
    case ForecastKind::DistributionEstimator: return "distribution";
  }
  return "?";
}

Forecaster::Forecaster(const ForecasterSpec& spec, std::uint64_t seed)
    : spec_(spec), rng_(seed) {
  if (spec_.kind == ForecastKind::MovingAverage && spec_.ma_window < 1) {
    throw std::invalid_argument("forecaster: ma window must be >= 1");
  }
  if (spec_.kind == ForecastKind::Ewma &&
      (spec_.ewma_weight < 0.0 || spec_.ewma_weight > 1.0)) {
    throw std::invalid_argument("forecaster: ewma weight must lie in [0, 1]");
  }
  if (spec_.kind == ForecastKind::DistributionEstimator && spec_.distr_history < 1) {
    throw std::invalid_argument("forecaster: history length must be >= 1");
  }
  if (spec_.kind == ForecastKind::FalsePositive && spec_.fp_rate < 0.0) {
    throw std::invalid_argument("forecaster: negative false-positive rate");
  }
}

void Forecaster::observe(int truth) {
  if (truth < 0) throw std::invalid_argument("forecaster: negative observation");
  switch (spec_.kind) {
    case ForecastKind::MovingAverage:
      history_.push_back(truth);
      while (static_cast<int>(history_.size()) > spec_.ma_window) history_.pop_front();
      break;
    case ForecastKind::DistributionEstimator:
      history_.push_back(truth);
      while (static_cast<int>(history_.size()) > spec_.distr_history) history_.pop_front();
      break;
    case ForecastKind::Ewma:
      if (!primed_) {
        ewma_ = truth;
        primed_ = true;
      } else {
        ewma_ = spec_.ewma_weight * truth + (1.0 - spec_.ewma_weight) * ewma_;
      }
      break;
    case ForecastKind::Kalman: {
      if (!primed_) {
        kalman_x_ = truth;
        kalman_p_ = spec_.kalman_obs_var;
        primed_ = true;
      } else {
        double p = kalman_p_ + spec_.kalman_process_var;
        double gain = p / (p + spec_.kalman_obs_var);
        kalman_x_ += gain * (truth - kalman_x_);
        kalman_p_ = (1.0 - gain) * p;
      }
      break;
    }
    default:
      break;  // oracle variants keep no state
  }
}

int Forecaster::predict() {
  switch (spec_.kind) {
    case ForecastKind::MovingAverage: {
      if (history_.empty()) return 0;
      long long s = 0;
      for (int v : history_) s += v;
      return static_cast<int>(std::llround(static_cast<double>(s) / history_.size()));
    }
    case ForecastKind::Ewma:
      return primed_ ? static_cast<int>(std::llround(ewma_)) : 0;
    case ForecastKind::Kalman:
      return primed_ ? static_cast<int>(std::llround(kalman_x_)) : 0;
    case ForecastKind::DistributionEstimator: {
      if (history_.empty()) return 0;
      int i = rng_.uniform_int(0, static_cast<int>(history_.size()) - 1);
      return history_[static_cast<std::size_t>(i)];
    }
    case ForecastKind::AllFalseNegative:
      return 0;
    default:
      throw std::logic_error("predict() is only defined for learned and null forecasters");
  }
}

int forecast_next(const ForecasterSpec& spec, std::span<const int> history, std::uint64_t seed) {
  Forecaster f(spec, seed);
  for (int v : history) f.observe(v);
  return f.predict();
}

namespace {

// Entries for the newly appended slot at lookahead depth d. Phantom inflation
// only applies to genuinely predicted slots (d >= 1); the current slot is
// observed, not predicted.
WindowSlot make_far_slot(int service, std::int64_t arrival, int truth, int depth,
                         Forecaster& forecaster, RequestRegistry& registry) {
  WindowSlot slot;
  slot.arrival_slot = arrival;
  slot.truth = truth;
  const ForecasterSpec& spec = forecaster.spec();
  int real = 0, phantom = 0;
  bool provisional = false;
  switch (spec.kind) {
    case ForecastKind::Perfect:
      real = truth;
      break;
    case ForecastKind::AllFalseNegative:
      break;  // predicts nothing; truth materializes on arrival
    case ForecastKind::FalsePositive:
      real = truth;
      if (depth >= 1) phantom = forecaster.rng().poisson(spec.fp_rate);
      break;
    default:
      real = forecaster.predict();
      provisional = true;
      break;
  }
  for (int i = 0; i < real; ++i) {
    ReqId id = registry.create(service, arrival, false, provisional);
    slot.pending.push_back(id);
    slot.created.push_back(id);
  }
  for (int i = 0; i < phantom; ++i) {
    ReqId id = registry.create(service, arrival, true, false);
    slot.pending.push_back(id);
    slot.created.push_back(id);
  }
  slot.predicted = real + phantom;
  slot.capacity = slot.predicted;
  return slot;
}

void reconcile_front(PredictionWindow& w, Forecaster& forecaster, RequestRegistry& registry) {
  WindowSlot& slot = w.slots.front();
  if (slot.reconciled) return;
  slot.reconciled = true;
  const ForecasterSpec& spec = forecaster.spec();
  switch (spec.kind) {
    case ForecastKind::Perfect:
    case ForecastKind::FalsePositive:
      break;  // tags were exact at creation
    case ForecastKind::AllFalseNegative:
      for (int i = 0; i < slot.truth; ++i) {
        ReqId id = registry.create(w.service, slot.arrival_slot, false, false);
        slot.pending.push_back(id);
        slot.created.push_back(id);
        ++slot.capacity;
      }
      break;
    default: {
      forecaster.observe(slot.truth);
      // first `truth` provisional entries were right; the rest were phantoms
      int real_budget = slot.truth;
      for (ReqId id : slot.created) {
        RequestRecord& r = registry.at(id);
        if (!r.provisional) continue;
        r.provisional = false;
        if (real_budget > 0) {
          r.arrival_slot = slot.arrival_slot;
          --real_budget;
        } else {
          r.phantom = true;
        }
      }
      for (int i = 0; i < real_budget; ++i) {
        ReqId id = registry.create(w.service, slot.arrival_slot, false, false);
        slot.pending.push_back(id);
        slot.created.push_back(id);
        ++slot.capacity;
      }
      break;
    }
  }
}

}  // namespace

PredictionWindow init_window(int service, int window_size, std::span<const int> truths,
                             Forecaster& forecaster, RequestRegistry& registry) {
  if (window_size < 0) throw std::invalid_argument("init_window: negative window size");
  if (static_cast<int>(truths.size()) < window_size + 1) {
    throw std::invalid_argument("init_window: need truths for slots 0..D");
  }
  PredictionWindow w;
  w.service = service;
  w.window_size = window_size;
  for (int d = 0; d <= window_size; ++d) {
    w.slots.push_back(
        make_far_slot(service, d, truths[static_cast<std::size_t>(d)], d, forecaster, registry));
  }
  reconcile_front(w, forecaster, registry);
  return w;
}

int advance_window(PredictionWindow& w, int truth_far, Forecaster& forecaster,
                   RequestRegistry& registry, std::int64_t now) {
  if (w.slots.empty()) throw std::logic_error("advance_window: empty window");
  if (!w.slots.front().pending.empty()) {
    throw std::logic_error("advance_window: front slot not fully admitted");
  }
  std::int64_t before = w.qp();
  w.slots.pop_front();
  w.slots.push_back(make_far_slot(w.service, now + w.window_size, truth_far, w.window_size,
                                  forecaster, registry));
  if (w.slots.front().arrival_slot != now) {
    throw std::logic_error("advance_window: slot bookkeeping out of step");
  }
  reconcile_front(w, forecaster, registry);
  return static_cast<int>(w.qp() - before);
}

}  // namespace poscars
