#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "poscars/config.hpp"
#include "poscars/golden.hpp"
#include "poscars/io.hpp"

#include <CLI11.hpp>

namespace {

int cmd_run(const std::string& config_path, const std::vector<std::string>& sets,
            const std::string& out_dir, long long seed, bool have_seed) {
  poscars::IniDoc doc = poscars::parse_ini_file(config_path);
  for (const std::string& s : sets) poscars::apply_override(doc, s);
  if (have_seed) doc.set("run", "seed", std::to_string(seed));
  poscars::IniDoc resolved = poscars::resolve_config(doc);
  poscars::SimulationConfig cfg = poscars::config_from_ini(resolved);
  poscars::ReplicateResult agg = poscars::replicate(cfg);
  poscars::write_run_outputs(out_dir, resolved, agg);
  std::cout << "wrote " << out_dir << "/slots.csv and summary.json"
            << "  cost=" << poscars::format_double(agg.cost.mean)
            << " h=" << poscars::format_double(agg.h.mean)
            << " resp_ms=" << poscars::format_double(agg.resp_mean_pooled) << "\n";
  return 0;
}

int cmd_sweep(const std::string& spec_path, const std::string& out_dir, int threads) {
  poscars::IniDoc doc = poscars::parse_ini_file(spec_path);
  poscars::SweepSpec spec = poscars::sweep_from_ini(doc);
  std::vector<poscars::SweepPoint> points = poscars::run_sweep(spec, threads);
  poscars::write_sweep_outputs(out_dir, spec, points);
  int failed = 0;
  for (const auto& p : points) {
    if (p.failed) {
      ++failed;
      std::cerr << spec.axis << "=" << p.value << ": " << p.status << "\n";
    }
  }
  std::cout << "wrote " << out_dir << "/sweep.csv (" << points.size() << " points, " << failed
            << " failed)\n";
  return 0;
}

int cmd_golden() {
  std::vector<std::string> bad = poscars::golden_check();
  if (bad.empty()) {
    std::cout << "golden: all checks passed\n";
    return 0;
  }
  for (const std::string& line : bad) std::cerr << "golden: " << line << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-time service-chain scheduling simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> sets;
  std::string out_dir = "out";
  long long seed = 0;
  auto* run = app.add_subcommand("run", "One configuration, slots.csv + summary.json");
  run->add_option("--config", config_path, "Configuration file")->required();
  run->add_option("--set", sets, "Override, section.key=value or a shorthand like V=100");
  run->add_option("--out", out_dir, "Output directory");
  auto* seed_opt = run->add_option("--seed", seed, "Override the run seed");

  std::string spec_path;
  std::string sweep_out = "out";
  int threads = 1;
  auto* sweep = app.add_subcommand("sweep", "One run per axis value, combined sweep.csv");
  sweep->add_option("--spec", spec_path, "Sweep file: base config plus a [sweep] section")
      ->required();
  sweep->add_option("--out", sweep_out, "Output directory");
  sweep->add_option("--threads", threads, "Concurrent points");

  auto* golden = app.add_subcommand("golden", "Replay the embedded walkthrough scenario");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return cmd_run(config_path, sets, out_dir, seed, seed_opt->count() > 0);
    }
    if (sweep->parsed()) return cmd_sweep(spec_path, sweep_out, threads);
    if (golden->parsed()) return cmd_golden();
  } catch (const poscars::ConfigNotFound& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
