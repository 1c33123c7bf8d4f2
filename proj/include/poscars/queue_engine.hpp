#pragma once

#include <cstdint>
#include <deque>
#include <span>
#include <vector>

#include "poscars/model.hpp"
#include "poscars/request.hpp"
#include "poscars/workload.hpp"

namespace poscars {

struct SimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requests forwarded to one downstream instance. Plain schedulers emit a
// single batch per instance carrying the whole carryover (count may be 0,
// which still designates the successor); batched variants emit several.
struct Batch {
  int target_server = 0;
  int count = 0;
  bool operator==(const Batch&) const = default;
};

// One slot's control decisions, all computed from the same start-of-slot
// snapshot before anything is applied.
struct DecisionSet {
  std::vector<std::vector<std::pair<int, int>>> admit;  // service -> [(server, count)]
  std::vector<std::vector<int>> admit_depth;            // service -> per-depth pulls
  std::vector<std::vector<Batch>> forward;              // instance -> batches (empty: terminal)
  std::vector<int> alloc;                               // instance -> option index

  bool operator==(const DecisionSet&) const = default;
};

struct InstanceQueue {
  std::deque<ReqId> backlog;
  std::vector<ReqId> carry;  // processed last slot, forwarded this slot
  int carry_nominal = 0;     // service rate behind that carry
};

// Requests moved across one link during forwarding. nominal carries the
// rate-based amount used by the strict cost-accounting mode.
struct LinkFlow {
  int from = 0;
  int to = 0;
  int count = 0;
  int nominal = 0;
};

struct ProcessOutcome {
  int completions = 0;
  int pre_served = 0;  // completed before their true arrival
  // per-instance processed ids, captured only when auditing is on
  std::vector<std::vector<ReqId>> processed;
};

// Dynamic state: prediction windows, per-instance FIFO backlogs, carryover
// and the request ledger. Application order within a slot is admission,
// forwarding, processing, then window advance.
class QueueSystem {
 public:
  QueueSystem(const Model& model, const ForecasterSpec& forecaster, std::uint64_t seed,
              const std::vector<std::vector<int>>& initial_truths);

  // Earliest-first depth split of an admission total (drain d = 0 upward).
  static std::vector<int> split_earliest_first(const PredictionWindow& w, std::int64_t total);

  // Pulls admitted requests out of the windows and appends them to ingress
  // backlogs. Throws SimError when the decision violates the admission
  // bounds (Q0 <= delta <= Qp, per-depth availability, split consistency).
  void apply_admission(const DecisionSet& d);

  // Moves carryover to downstream backlogs following the batch lists.
  // Returns the per-link flows for cost accounting.
  std::vector<LinkFlow> apply_forwarding(const DecisionSet& d);

  // Serves min(rate, backlog) per instance; terminal output retires at
  // `slot`, everything else becomes next slot's carry. Also enforces the
  // per-server capacity constraint of the allocation.
  ProcessOutcome apply_processing(const DecisionSet& d, std::int64_t slot);

  // Slide every window to represent `new_now`; truth_far[k] is the true
  // arrival count for the slot entering at the horizon end. Returns the
  // pending entries each service gained.
  std::vector<int> advance_windows(std::span<const int> truth_far, std::int64_t new_now);

  // Backlog potential: sum of prediction backlogs plus alpha times the
  // instance backlogs.
  double total_queue_snapshot(double alpha) const;

  std::int64_t qp(int service) const { return windows_[static_cast<std::size_t>(service)].qp(); }
  const PredictionWindow& window(int service) const {
    return windows_[static_cast<std::size_t>(service)];
  }
  int queue_len(int instance) const {
    return static_cast<int>(queues_[static_cast<std::size_t>(instance)].backlog.size());
  }
  int carry_len(int instance) const {
    return static_cast<int>(queues_[static_cast<std::size_t>(instance)].carry.size());
  }
  int carry_nominal(int instance) const {
    return queues_[static_cast<std::size_t>(instance)].carry_nominal;
  }
  std::int64_t total_backlog() const;
  const RequestRegistry& registry() const { return registry_; }
  RequestRegistry& registry() { return registry_; }
  const Model& model() const { return *model_; }
  const InstanceQueue& queue(int instance) const {
    return queues_[static_cast<std::size_t>(instance)];
  }

  void set_audit(bool on) { audit_ = on; }

  // test/scenario seeding
  ReqId seed_backlog_request(int instance, int service, std::int64_t arrival);
  ReqId seed_carry_request(int instance, int service, std::int64_t arrival);
  void set_carry_nominal(int instance, int rate);

 private:
  const Model* model_;
  RequestRegistry registry_;
  std::vector<InstanceQueue> queues_;
  std::vector<PredictionWindow> windows_;
  std::vector<Forecaster> forecasters_;
  bool audit_ = false;
};

}  // namespace poscars
