#pragma once

#include <cstdint>
#include <vector>

namespace poscars {

using ReqId = std::uint32_t;

// One request, tracked from prediction through completion. arrival_slot is
// the true arrival time once known; for a provisional entry it holds the
// predicted slot until reconciliation. Phantoms (false-positive predictions)
// flow through the pipeline but never enter response-time statistics.
struct RequestRecord {
  int service = 0;
  std::int64_t arrival_slot = 0;
  std::int64_t completion_slot = -1;
  bool phantom = false;
  bool provisional = false;

  bool completed() const { return completion_slot >= 0; }
};

class RequestRegistry {
 public:
  ReqId create(int service, std::int64_t arrival_slot, bool phantom, bool provisional) {
    records_.push_back(RequestRecord{service, arrival_slot, -1, phantom, provisional});
    return static_cast<ReqId>(records_.size() - 1);
  }

  RequestRecord& at(ReqId id) { return records_[id]; }
  const RequestRecord& at(ReqId id) const { return records_[id]; }
  std::size_t size() const { return records_.size(); }
  const std::vector<RequestRecord>& all() const { return records_; }

 private:
  std::vector<RequestRecord> records_;
};

}  // namespace poscars
