#pragma once

#include "poscars/queue_engine.hpp"

namespace poscars {

// Drift-plus-penalty knobs: V scales the cost penalty, alpha weights the
// instance backlogs against the prediction backlogs, gamma prices energy
// against traffic.
struct ControlParams {
  double V = 10.0;
  double alpha = 10.0;
  double gamma = 1.0;
};

struct AdmissionDecision {
  std::vector<std::vector<std::pair<int, int>>> admit;
  std::vector<std::vector<int>> admit_depth;
};

// Per service: find the least-loaded ingress instances S*; admit only the
// untreated arrivals when alpha * min-queue exceeds the prediction backlog,
// otherwise admit the whole backlog; spread evenly over S* (largest
// remainder, ties to the lower server id) and pull earliest slots first.
AdmissionDecision decide_admission(const Model& m, const QueueSystem& qs,
                                   const ControlParams& p);

// Price of steering one carried request to a successor instance.
inline double chaining_score(double V, double w, double alpha, long long succ_queue,
                             long long carry) {
  return (V * w + alpha * static_cast<double>(succ_queue)) * static_cast<double>(carry);
}

// Every non-terminal instance independently picks the reachable successor
// with the lowest V*w + alpha*queue, ties to the lower server id. A zero
// carry still designates its successor. Throws SimError when an instance has
// no reachable successor.
std::vector<std::vector<Batch>> decide_chaining(const Model& m, const QueueSystem& qs,
                                                const ControlParams& p);

// Net cost of granting `option` to an instance with `queue` waiting
// requests; negative means the grant pays for itself.
double net_cost(const ControlParams& p, const ResourceVec& unit_cost, long long queue,
                const VnfSpec& vnf, const ResourceVec& option);

// Greedy per-server extraction: repeatedly take the candidate with the most
// negative net cost (ties: lower vnf id, then lexicographically smaller
// option), grant it if it still fits, then drop that VNF's other candidates.
std::vector<int> decide_allocation(const Model& m, const QueueSystem& qs,
                                   const ControlParams& p);

// Value of the transformed per-slot objective for a full decision set,
// evaluated against the current (pre-application) state.
double slot_objective(const Model& m, const QueueSystem& qs, const DecisionSet& d,
                      const ControlParams& p);

}  // namespace poscars
