#pragma once

#include <memory>
#include <string>

#include "poscars/scheduler.hpp"

namespace poscars {

enum class ChainingVariant { Poscars, PPod, PBs, PBf, Random, Jsq, OneHop };

ChainingVariant variant_from_string(const std::string& s);
std::string to_string(ChainingVariant v);

struct StrategySpec {
  ChainingVariant variant = ChainingVariant::Poscars;
  int probe_ratio = 3;  // d
  int batch = 5;        // batch size for the batched variants
};

// One forwarding candidate as the chaining rules see it.
struct SuccessorView {
  int server = 0;
  int queue = 0;
  double w = 0.0;  // transfer price from the forwarding instance
};

// Power-of-d-choices: probe min(d, n) distinct successors, pick the probed
// one with the lowest V*w + alpha*queue (ties: lower server id). With d >= n
// this equals the full scan; with d = 1 it is a uniform random pick.
int p_pod_choose(std::span<const SuccessorView> succ, int d, const ControlParams& p, Rng& rng);

// Batch sampling: z = ceil(carry / batch) batches probe min(d * z, n)
// successors once and go one each to the z lowest-score probed targets
// (wrapping in score order if fewer were probed).
std::vector<Batch> p_bs_assign(int carry, int batch, int d, std::span<const SuccessorView> succ,
                               const ControlParams& p, Rng& rng);

// Batch filling: same probe budget, but batches are placed sequentially,
// each to the currently lowest-score probed target whose provisional queue
// grows by the batch it just received.
std::vector<Batch> p_bf_assign(int carry, int batch, int d, std::span<const SuccessorView> succ,
                               const ControlParams& p, Rng& rng);

// Random: uniform. Jsq: shortest queue, ties random. OneHop: cheapest link
// among targets with idle capacity (queue < phi_max of the successor VNF),
// falling back to the cheapest link overall; ties to the lower server id.
int baseline_choose(ChainingVariant v, std::span<const SuccessorView> succ, int succ_phi_max,
                    Rng& rng);

// Produces one slot's full decision set. Admission and allocation always
// follow the base scheduler; the variants differ only in chaining.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual DecisionSet decide(const Model& m, const QueueSystem& qs, std::int64_t slot) = 0;
};

class ScheduleStrategy : public Strategy {
 public:
  ScheduleStrategy(const ControlParams& params, const StrategySpec& spec, std::uint64_t seed)
      : params_(params), spec_(spec), rng_(seed) {}

  DecisionSet decide(const Model& m, const QueueSystem& qs, std::int64_t slot) override;

  // probes spent on the last decide() call, for the sampling-budget checks
  long long last_probe_count() const { return probes_; }

 private:
  std::vector<std::vector<Batch>> chain(const Model& m, const QueueSystem& qs);

  ControlParams params_;
  StrategySpec spec_;
  Rng rng_;
  long long probes_ = 0;
};

// Replays a precomputed decision list; slots beyond the script reuse its
// last entry. Used by the scenario tests.
class ScriptStrategy : public Strategy {
 public:
  explicit ScriptStrategy(std::vector<DecisionSet> script) : script_(std::move(script)) {}
  DecisionSet decide(const Model&, const QueueSystem&, std::int64_t slot) override {
    if (script_.empty()) throw SimError("script strategy has no decisions");
    std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(slot), script_.size() - 1);
    return script_[i];
  }

 private:
  std::vector<DecisionSet> script_;
};

std::unique_ptr<Strategy> make_strategy(const ControlParams& params, const StrategySpec& spec,
                                        std::uint64_t seed);

}  // namespace poscars
