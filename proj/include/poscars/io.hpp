#pragma once

#include <span>
#include <string>
#include <vector>

#include "poscars/config.hpp"

namespace poscars {

// Shortest round-trip decimal form; the same bytes for the same bits.
std::string format_double(double v);

// Header `slot,m,g,h,completions,pre_served`, one row per slot of the first
// replication. No timestamps anywhere, so equal runs emit equal bytes.
std::string slots_csv(std::span<const SlotMetrics> slots);

// Versioned summary carrying the resolved config for provenance.
nlohmann::json summary_json(const IniDoc& resolved, const ReplicateResult& agg);

void write_text_file(const std::string& path, const std::string& content);

// Writes <out>/slots.csv and <out>/summary.json, creating the directory.
void write_run_outputs(const std::string& out_dir, const IniDoc& resolved,
                       const ReplicateResult& agg);

struct SweepPoint {
  std::string value;
  std::string status = "ok";  // or "error: reason"
  bool failed = false;
  ReplicateResult result;
};

// One point per axis value; a failed point is recorded and the sweep moves
// on. threads > 1 fans points out without changing any output byte.
std::vector<SweepPoint> run_sweep(const SweepSpec& spec, int threads);

std::string sweep_csv(const SweepSpec& spec, std::span<const SweepPoint> points);

// Writes <out>/sweep.csv plus per-point summary_<value>.json files.
void write_sweep_outputs(const std::string& out_dir, const SweepSpec& spec,
                         std::span<const SweepPoint> points);

}  // namespace poscars
