#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "poscars/workload.hpp"

using namespace poscars;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& content) {
    static int counter = 0;
    path = (std::filesystem::temp_directory_path() /
            ("poscars_trace_" + std::to_string(++counter) + ".txt"))
               .string();
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("poisson generator hits the requested mean") {
  ArrivalTrace t = generate_poisson(3.0, 100000, 99, 10000, 10.0);
  REQUIRE(t.counts.size() == 100000);
  double sum = 0;
  for (int c : t.counts) {
    CHECK(c >= 0);
    sum += c;
  }
  double mean = sum / 100000.0;
  CHECK(mean > 3.0 - 0.0165);  // three sigma of the sample mean
  CHECK(mean < 3.0 + 0.0165);

  ArrivalTrace again = generate_poisson(3.0, 100000, 99, 10000, 10.0);
  CHECK(t.counts == again.counts);
  ArrivalTrace other = generate_poisson(3.0, 100000, 100, 10000, 10.0);
  CHECK(t.counts != other.counts);
}

TEST_CASE("poisson counts truncate at the arrival bound") {
  ArrivalTrace t = generate_poisson(5.0, 2000, 7, 1, 10.0);
  for (int c : t.counts) CHECK(c <= 1);
}

TEST_CASE("trace beyond the horizon reads zero") {
  ArrivalTrace t;
  t.counts = {3, 1};
  CHECK(t.at(0) == 3);
  CHECK(t.at(1) == 1);
  CHECK(t.at(2) == 0);
  CHECK(t.at(-1) == 0);
}

TEST_CASE("count traces parse one integer per line") {
  TempFile f("3\n0\n7\n");
  ArrivalTrace t = load_trace(f.path, TraceMode::Counts, 10.0, 10000);
  CHECK(t.counts == std::vector<int>{3, 0, 7});
}

TEST_CASE("count traces reject junk with a line number") {
  TempFile f("3\nbogus\n7\n");
  try {
    load_trace(f.path, TraceMode::Counts, 10.0, 10000);
    FAIL("expected a parse error");
  } catch (const TraceParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("count traces reject negatives") {
  TempFile f("3\n-1\n");
  CHECK_THROWS_AS(load_trace(f.path, TraceMode::Counts, 10.0, 10000), TraceParseError);
}

TEST_CASE("timestamp traces bin into slots") {
  TempFile f("timestamp_ms\n0\n5\n9.9\n10\n25\n");
  ArrivalTrace t = load_trace(f.path, TraceMode::Timestamps, 10.0, 10000);
  CHECK(t.counts == std::vector<int>{3, 1, 1});
}

TEST_CASE("window sizes are uniform over twice the average depth") {
  std::vector<int> w = assign_window_sizes(5, 500, 4);
  double sum = 0;
  for (int d : w) {
    CHECK(d >= 0);
    CHECK(d <= 10);
    sum += d;
  }
  double mean = sum / 500.0;
  CHECK(mean > 4.55);  // three sigma around 5
  CHECK(mean < 5.45);

  for (int d : assign_window_sizes(0, 20, 4)) CHECK(d == 0);
  CHECK(assign_window_sizes(5, 500, 4) == w);
}

TEST_CASE("moving average forecast") {
  ForecasterSpec spec;
  spec.kind = ForecastKind::MovingAverage;
  spec.ma_window = 3;
  std::vector<int> hist{1, 3, 6, 9};  // window covers 3, 6, 9
  CHECK(forecast_next(spec, hist, 1) == 6);
  std::vector<int> one{8};
  CHECK(forecast_next(spec, one, 1) == 8);
  CHECK(forecast_next(spec, {}, 1) == 0);
}

TEST_CASE("ewma forecast weights the newest observation") {
  ForecasterSpec spec;
  spec.kind = ForecastKind::Ewma;
  spec.ewma_weight = 0.5;
  std::vector<int> hist{4, 8};  // estimate 4, then 0.5*8 + 0.5*4
  CHECK(forecast_next(spec, hist, 1) == 6);
  CHECK(forecast_next(spec, {}, 1) == 0);
}

TEST_CASE("kalman forecast tracks the latest observation as noise vanishes") {
  ForecasterSpec spec;
  spec.kind = ForecastKind::Kalman;
  spec.kalman_process_var = 1.0;
  spec.kalman_obs_var = 1e-12;
  std::vector<int> hist{2, 9, 5};
  CHECK(forecast_next(spec, hist, 1) == 5);
}

TEST_CASE("distribution estimator samples the recorded history") {
  ForecasterSpec spec;
  spec.kind = ForecastKind::DistributionEstimator;
  spec.distr_history = 100;
  std::vector<int> hist{7, 7, 7};
  CHECK(forecast_next(spec, hist, 3) == 7);
  // reproducible per seed
  std::vector<int> mixed{1, 5, 9, 2};
  CHECK(forecast_next(spec, mixed, 11) == forecast_next(spec, mixed, 11));
}

TEST_CASE("forecast kind names round-trip") {
  for (const char* name : {"perfect", "false-negative", "false-positive", "ma", "ewma",
                           "kalman", "distribution"}) {
    CHECK(to_string(forecast_kind_from_string(name)) == name);
  }
  CHECK_THROWS(forecast_kind_from_string("psychic"));
  CHECK(is_learned(ForecastKind::Ewma));
  CHECK(is_learned(ForecastKind::Kalman));
  CHECK_FALSE(is_learned(ForecastKind::Perfect));
  CHECK_FALSE(is_learned(ForecastKind::FalsePositive));
}

TEST_CASE("perfect window mirrors the truth") {
  RequestRegistry reg;
  Forecaster fc(ForecasterSpec{}, 1);
  std::vector<int> truths{4, 1, 2};
  PredictionWindow w = init_window(0, 2, truths, fc, reg);
  REQUIRE(w.slots.size() == 3);
  CHECK(w.slots[0].pending.size() == 4);
  CHECK(w.slots[1].pending.size() == 1);
  CHECK(w.slots[2].pending.size() == 2);
  CHECK(w.qp() == 7);
  CHECK(w.q0() == 4);
  for (const auto& slot : w.slots) {
    CHECK(static_cast<int>(slot.pending.size()) <= slot.capacity);
    for (ReqId id : slot.pending) {
      CHECK_FALSE(reg.at(id).phantom);
      CHECK_FALSE(reg.at(id).provisional);
      CHECK(reg.at(id).arrival_slot == slot.arrival_slot);
    }
  }
}

TEST_CASE("all-false-negative predicts nothing until arrival") {
  RequestRegistry reg;
  ForecasterSpec spec;
  spec.kind = ForecastKind::AllFalseNegative;
  Forecaster fc(spec, 1);
  std::vector<int> truths{3, 5};
  PredictionWindow w = init_window(0, 1, truths, fc, reg);
  CHECK(w.slots[0].pending.size() == 3);  // current slot materialized on arrival
  CHECK(w.slots[1].pending.size() == 0);  // future stays invisible
  w.slots[0].pending.clear();             // stand-in for a full admission
  int gained = advance_window(w, 9, fc, reg, 1);
  CHECK(w.slots[0].pending.size() == 5);  // yesterday's hidden truth arrives
  CHECK(w.slots[1].pending.size() == 0);
  CHECK(gained == 5);
}

TEST_CASE("false positives append phantoms only on predicted slots") {
  RequestRegistry reg;
  ForecasterSpec spec;
  spec.kind = ForecastKind::FalsePositive;
  spec.fp_rate = 5.0;
  Forecaster fc(spec, 77);
  std::vector<int> truths{2, 2, 2};
  PredictionWindow w = init_window(0, 2, truths, fc, reg);
  int front_phantoms = 0;
  for (ReqId id : w.slots[0].pending) front_phantoms += reg.at(id).phantom ? 1 : 0;
  CHECK(front_phantoms == 0);  // the current slot is observed, not predicted
  CHECK(w.slots[0].pending.size() == 2);
  for (std::size_t d = 1; d < w.slots.size(); ++d) {
    int real = 0;
    for (ReqId id : w.slots[d].pending) real += reg.at(id).phantom ? 0 : 1;
    CHECK(real == 2);
    CHECK(w.slots[d].pending.size() >= 2);
  }
}

TEST_CASE("learned windows reconcile shortfall and surplus at arrival") {
  RequestRegistry reg;
  ForecasterSpec spec;
  spec.kind = ForecastKind::Ewma;
  spec.ewma_weight = 0.5;
  Forecaster fc(spec, 1);
  std::vector<int> truths{5, 3, 1};
  PredictionWindow w = init_window(0, 1, truths, fc, reg);
  // no history yet: the far slot predicted 0, the front slot materialized 5
  CHECK(w.slots[0].pending.size() == 5);
  CHECK(w.slots[1].pending.size() == 0);
  w.slots[0].pending.clear();
  advance_window(w, truths[2], fc, reg, 1);
  // shortfall: the new front predicted 0, truth 3 materializes on arrival
  CHECK(w.slots[0].pending.size() == 3);
  // the estimate is 5 after one observation, so the new far slot carries 5
  CHECK(w.slots[1].pending.size() == 5);
  w.slots[0].pending.clear();
  advance_window(w, 0, fc, reg, 2);
  // surplus: five predicted, one arrives; the rest turn phantom
  const WindowSlot& front = w.slots[0];
  REQUIRE(front.created.size() == 5);
  int phantoms = 0, real = 0;
  for (ReqId id : front.created) {
    if (reg.at(id).phantom) {
      ++phantoms;
    } else {
      ++real;
      CHECK(reg.at(id).arrival_slot == 2);  // re-stamped to the true arrival
    }
    CHECK_FALSE(reg.at(id).provisional);
  }
  CHECK(real == 1);
  CHECK(phantoms == 4);
}

TEST_CASE("advancing requires a drained front slot") {
  RequestRegistry reg;
  Forecaster fc(ForecasterSpec{}, 1);
  std::vector<int> truths{2, 1};
  PredictionWindow w = init_window(0, 1, truths, fc, reg);
  CHECK_THROWS_AS(advance_window(w, 0, fc, reg, 1), std::logic_error);
}
