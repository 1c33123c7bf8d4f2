#include "poscars/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

namespace poscars {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, p);
}

std::string slots_csv(std::span<const SlotMetrics> slots) {
  std::string out = "slot,m,g,h,completions,pre_served\n";
  for (const SlotMetrics& s : slots) {
    out += std::to_string(s.slot);
    out += ',';
    out += format_double(s.m);
    out += ',';
    out += format_double(s.g);
    out += ',';
    out += format_double(s.h);
    out += ',';
    out += std::to_string(s.completions);
    out += ',';
    out += std::to_string(s.pre_served);
    out += '\n';
  }
  return out;
}

namespace {

nlohmann::json agg_json(const Aggregate& a) {
  return nlohmann::json{{"mean", a.mean}, {"std", a.stddev}};
}

}  // namespace

nlohmann::json summary_json(const IniDoc& resolved, const ReplicateResult& agg) {
  nlohmann::json per_rep = nlohmann::json::array();
  for (const RunSummary& s : agg.summaries) {
    per_rep.push_back({{"cost", s.time_avg_cost},
                       {"h", s.time_avg_h},
                       {"comm", s.time_avg_comm},
                       {"energy", s.time_avg_energy},
                       {"completed", s.completed},
                       {"pre_served", s.pre_served},
                       {"resp_mean_ms", s.resp_mean_ms},
                       {"resp_p50_ms", s.resp_p50_ms},
                       {"resp_p95_ms", s.resp_p95_ms},
                       {"resp_p99_ms", s.resp_p99_ms}});
  }
  return nlohmann::json{
      {"schema_version", 1},
      {"config", config_echo(resolved)},
      {"replications", agg.summaries.size()},
      {"cost", agg_json(agg.cost)},
      {"h", agg_json(agg.h)},
      {"comm", agg_json(agg.comm)},
      {"energy", agg_json(agg.energy)},
      {"response_ms",
       {{"per_rep_mean", agg_json(agg.resp_mean)},
        {"pooled_mean", agg.resp_mean_pooled},
        {"p50", agg.resp_p50},
        {"p95", agg.resp_p95},
        {"p99", agg.resp_p99}}},
      {"completed", agg.completed},
      {"pre_served", agg.pre_served},
      {"per_replication", std::move(per_rep)},
  };
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot open output file " + path);
  os << content;
  if (!os) throw ConfigError("failed writing " + path);
}

void write_run_outputs(const std::string& out_dir, const IniDoc& resolved,
                       const ReplicateResult& agg) {
  std::filesystem::create_directories(out_dir);
  write_text_file(out_dir + "/slots.csv", slots_csv(agg.first_slots));
  write_text_file(out_dir + "/summary.json", summary_json(resolved, agg).dump(2) + "\n");
}

std::vector<SweepPoint> run_sweep(const SweepSpec& spec, int threads) {
  if (threads < 1) threads = 1;
  auto run_point = [&spec](const std::string& value) {
    SweepPoint p;
    p.value = value;
    try {
      IniDoc doc = spec.base;
      apply_axis(doc, spec.axis, value);
      IniDoc resolved = resolve_config(doc);
      SimulationConfig cfg = config_from_ini(resolved);
      p.result = replicate(cfg, 1);
    } catch (const std::exception& e) {
      p.failed = true;
      std::string why = e.what();
      std::replace(why.begin(), why.end(), ',', ';');
      std::replace(why.begin(), why.end(), '\n', ' ');
      p.status = "error: " + why;
    }
    return p;
  };

  std::vector<SweepPoint> points(spec.values.size());
  if (threads == 1) {
    for (std::size_t i = 0; i < spec.values.size(); ++i) points[i] = run_point(spec.values[i]);
    return points;
  }
  std::size_t next = 0;
  while (next < points.size()) {
    std::size_t stop = std::min(points.size(), next + static_cast<std::size_t>(threads));
    std::vector<std::future<SweepPoint>> batch;
    for (std::size_t i = next; i < stop; ++i) {
      batch.push_back(std::async(std::launch::async, run_point, spec.values[i]));
    }
    for (std::size_t i = next; i < stop; ++i) points[i] = batch[i - next].get();
    next = stop;
  }
  return points;
}

std::string sweep_csv(const SweepSpec& spec, std::span<const SweepPoint> points) {
  std::string out = spec.axis +
                    ",status,cost_mean,cost_std,h_mean,h_std,comm_mean,energy_mean,"
                    "resp_mean_ms,resp_p50_ms,resp_p95_ms,resp_p99_ms,completed,pre_served\n";
  for (const SweepPoint& p : points) {
    out += p.value;
    out += ',';
    out += p.status;
    if (p.failed) {
      out += std::string(12, ',');
      out += '\n';
      continue;
    }
    const ReplicateResult& r = p.result;
    for (double v : {r.cost.mean, r.cost.stddev, r.h.mean, r.h.stddev, r.comm.mean,
                     r.energy.mean, r.resp_mean_pooled, r.resp_p50, r.resp_p95, r.resp_p99}) {
      out += ',';
      out += format_double(v);
    }
    out += ',';
    out += std::to_string(r.completed);
    out += ',';
    out += std::to_string(r.pre_served);
    out += '\n';
  }
  return out;
}

void write_sweep_outputs(const std::string& out_dir, const SweepSpec& spec,
                         std::span<const SweepPoint> points) {
  std::filesystem::create_directories(out_dir);
  write_text_file(out_dir + "/sweep.csv", sweep_csv(spec, points));
  for (const SweepPoint& p : points) {
    if (p.failed) continue;
    IniDoc doc = spec.base;
    apply_axis(doc, spec.axis, p.value);
    std::string name = p.value;
    std::replace(name.begin(), name.end(), '.', '_');
    std::replace(name.begin(), name.end(), '/', '_');
    write_text_file(out_dir + "/summary_" + spec.axis + "_" + name + ".json",
                    summary_json(resolve_config(doc), p.result).dump(2) + "\n");
  }
}

}  // namespace poscars
