#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "poscars/golden.hpp"
#include "poscars/sim.hpp"

using namespace poscars;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& content) {
    static int counter = 0;
    path = (std::filesystem::temp_directory_path() /
            ("poscars_sim_" + std::to_string(++counter) + ".txt"))
               .string();
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

SimulationConfig desk_config() {
  SimulationConfig cfg;
  cfg.horizon = 300;
  cfg.gen.services = 2;
  cfg.gen.chain_min = 2;
  cfg.gen.chain_max = 3;
  cfg.gen.instances_min = 2;
  cfg.gen.instances_max = 3;
  cfg.workload.rate = 2.0;
  return cfg;
}

bool slots_equal(const std::vector<SlotMetrics>& a, const std::vector<SlotMetrics>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].slot != b[i].slot || a[i].m != b[i].m || a[i].g != b[i].g || a[i].h != b[i].h ||
        a[i].completions != b[i].completions || a[i].pre_served != b[i].pre_served) {
      return false;
    }
  }
  return true;
}

bool summaries_equal(const RunSummary& a, const RunSummary& b) {
  return a.slots == b.slots && a.time_avg_cost == b.time_avg_cost &&
         a.time_avg_h == b.time_avg_h && a.time_avg_comm == b.time_avg_comm &&
         a.time_avg_energy == b.time_avg_energy && a.completed == b.completed &&
         a.pre_served == b.pre_served && a.resp_mean_ms == b.resp_mean_ms &&
         a.resp_p50_ms == b.resp_p50_ms && a.resp_p95_ms == b.resp_p95_ms &&
         a.resp_p99_ms == b.resp_p99_ms;
}

bool layouts_equal(const Model& a, const Model& b) {
  if (a.placement.hosts != b.placement.hosts) return false;
  if (a.comm.cost != b.comm.cost) return false;
  if (a.servers.size() != b.servers.size()) return false;
  for (std::size_t s = 0; s < a.servers.size(); ++s) {
    if (a.servers[s].capacity != b.servers[s].capacity) return false;
    if (a.servers[s].unit_cost != b.servers[s].unit_cost) return false;
  }
  return true;
}

std::vector<int> window_sizes(const Model& m) {
  std::vector<int> w;
  for (const auto& s : m.catalog.services) w.push_back(s.window_size);
  return w;
}

}  // namespace

TEST_CASE("a run is a pure function of its config") {
  SimulationConfig cfg = desk_config();
  RunResult a = run_one(cfg);
  RunResult b = run_one(cfg);
  CHECK(slots_equal(a.slots, b.slots));
  CHECK(summaries_equal(a.summary, b.summary));
  CHECK(a.responses == b.responses);
}

TEST_CASE("different seeds give different trajectories") {
  SimulationConfig cfg = desk_config();
  RunResult a = run_one(cfg);
  cfg.seed = 2;
  RunResult b = run_one(cfg);
  CHECK_FALSE(slots_equal(a.slots, b.slots));
}

TEST_CASE("the model layout follows model_seed, not the run seed") {
  SimulationConfig cfg = desk_config();

  SUBCASE("without windows the whole model repeats") {
    Model a = build_scenario_model(cfg);
    cfg.seed = 99;
    Model b = build_scenario_model(cfg);
    CHECK(layouts_equal(a, b));
    CHECK(window_sizes(a) == window_sizes(b));
  }
  SUBCASE("window draws ride the run seed") {
    cfg.gen.d_avg = 5;
    Model base = build_scenario_model(cfg);
    bool some_windows_differ = false;
    for (std::uint64_t s = 2; s <= 6; ++s) {
      cfg.seed = s;
      Model other = build_scenario_model(cfg);
      CHECK(layouts_equal(base, other));
      if (window_sizes(other) != window_sizes(base)) some_windows_differ = true;
    }
    CHECK(some_windows_differ);
  }
  SUBCASE("a different model seed changes the layout") {
    Model a = build_scenario_model(cfg);
    cfg.model_seed = 2;
    Model b = build_scenario_model(cfg);
    CHECK_FALSE(layouts_equal(a, b));
  }
  SUBCASE("learned forecasters force one-slot windows") {
    cfg.gen.d_avg = 5;
    cfg.forecaster.kind = ForecastKind::Ewma;
    Model m = build_scenario_model(cfg);
    for (int w : window_sizes(m)) CHECK(w == 1);
  }
}

TEST_CASE("replication zero matches a standalone run") {
  SimulationConfig cfg = desk_config();
  cfg.replications = 3;
  ReplicateResult rep = replicate(cfg);
  RunResult solo = run_one(cfg);
  CHECK(slots_equal(rep.first_slots, solo.slots));
  REQUIRE(rep.summaries.size() == 3);
  CHECK(summaries_equal(rep.summaries[0], solo.summary));

  // later replications use shifted seeds
  CHECK_FALSE(summaries_equal(rep.summaries[1], rep.summaries[0]));
}

TEST_CASE("thread fan-out never changes the result") {
  SimulationConfig cfg = desk_config();
  cfg.replications = 4;
  ReplicateResult serial = replicate(cfg, 1);
  ReplicateResult fanned = replicate(cfg, 4);
  REQUIRE(serial.summaries.size() == fanned.summaries.size());
  for (std::size_t i = 0; i < serial.summaries.size(); ++i) {
    CHECK(summaries_equal(serial.summaries[i], fanned.summaries[i]));
  }
  CHECK(serial.cost.mean == fanned.cost.mean);
  CHECK(serial.cost.stddev == fanned.cost.stddev);
  CHECK(serial.resp_p99 == fanned.resp_p99);
  CHECK(serial.completed == fanned.completed);
}

TEST_CASE("validation mode holds over a full run") {
  SimulationConfig cfg = desk_config();
  cfg.validate = true;
  CHECK_NOTHROW(run_one(cfg));
}

TEST_CASE("the desk scenario is stable under the default control") {
  SimulationConfig cfg = desk_config();
  cfg.horizon = 1500;
  cfg.warmup = 300;
  RunResult r = run_one(cfg);
  // two services at rate 2 over 1200 counted slots, minus what is in flight
  CHECK(r.summary.completed > 2500);
  CHECK(r.summary.time_avg_h > 0.0);
  CHECK(r.summary.time_avg_h < 1e5);
  CHECK(r.summary.resp_mean_ms > 0.0);
}

TEST_CASE("trace workloads feed the run") {
  Model golden = golden_model(1);
  SimulationConfig cfg;
  cfg.explicit_model = std::make_shared<Model>(golden);
  cfg.horizon = 4;
  cfg.workload.kind = WorkloadSpec::Kind::Trace;

  SUBCASE("a shared counts file drives every service") {
    TempFile trace("2\n1\n0\n2\n0\n0\n");
    cfg.workload.traces = {trace.path};
    RunResult r = run_one(cfg);
    CHECK(r.summary.completed > 0);
  }
  SUBCASE("a short trace is rejected") {
    TempFile trace("2\n1\n");
    cfg.workload.traces = {trace.path};
    CHECK_THROWS_AS(run_one(cfg), ConfigError);
  }
  SUBCASE("the file count must match the services") {
    TempFile trace("2\n1\n0\n2\n0\n0\n");
    cfg.workload.traces = {trace.path, trace.path, trace.path};
    CHECK_THROWS_AS(run_one(cfg), ConfigError);
  }
  SUBCASE("no files at all") {
    cfg.workload.traces = {};
    CHECK_THROWS_AS(run_one(cfg), ConfigError);
  }
}

TEST_CASE("the queue dump starts with its header") {
  SimulationConfig cfg = desk_config();
  cfg.horizon = 3;
  cfg.dump_queues = (std::filesystem::temp_directory_path() / "poscars_dump_test.csv").string();
  run_one(cfg);
  std::ifstream in(cfg.dump_queues);
  std::string header;
  std::getline(in, header);
  CHECK(header == "slot,instance,backlog,carry");
  std::string row;
  CHECK(std::getline(in, row));
  CHECK(row.rfind("0,0,", 0) == 0);
  in.close();
  std::remove(cfg.dump_queues.c_str());
}

TEST_CASE("per-slot jitter re-prices the links") {
  SimulationConfig cfg = desk_config();
  RunResult steady = run_one(cfg);
  cfg.jitter_per_slot = true;
  RunResult jittered = run_one(cfg);
  double steady_m = 0.0, jittered_m = 0.0;
  for (const auto& s : steady.slots) steady_m += s.m;
  for (const auto& s : jittered.slots) jittered_m += s.m;
  CHECK(steady_m != jittered_m);
}

TEST_CASE("an explicit model bypasses the generator") {
  SimulationConfig cfg;
  cfg.explicit_model = std::make_shared<Model>(golden_model(0));
  cfg.gen.services = 50;  // must be ignored
  Model m = build_scenario_model(cfg);
  CHECK(m.index.count() == 3);
  CHECK(m.catalog.services.size() == 1);
}

TEST_CASE("replicate insists on at least one replication") {
  SimulationConfig cfg = desk_config();
  cfg.replications = 0;
  CHECK_THROWS_AS(replicate(cfg), ConfigError);
}

TEST_CASE("recorded decisions match the horizon") {
  SimulationConfig cfg = desk_config();
  cfg.horizon = 25;
  cfg.record_decisions = true;
  RunResult r = run_one(cfg);
  CHECK(r.decisions.size() == 25);
  CHECK(run_one(cfg).decisions == r.decisions);
}
