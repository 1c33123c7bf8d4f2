#include "poscars/golden.hpp"

#include <sstream>

namespace poscars {

Model golden_model(int window_size) {
  std::vector<Server> servers;
  for (int s = 0; s < 3; ++s) servers.push_back(Server{s, {2}, {1}});

  Catalog catalog;
  for (int v = 0; v < 2; ++v) {
    VnfSpec vnf;
    vnf.id = v;
    vnf.service = 0;
    vnf.position = v + 1;
    vnf.theta = {1};
    vnf.phi_max = 2;
    vnf.options = {{0}, {1}, {2}};
    catalog.vnfs.push_back(std::move(vnf));
  }
  catalog.services.push_back(ServiceChainSpec{0, {0, 1}, window_size});

  Placement placement;
  placement.hosts = {{0}, {1, 2}};
  placement.hosted = {{0}, {1}, {1}};

  CommCostMatrix comm;
  comm.cost = {{0, 1, 2}, {1, 0, 3}, {2, 3, 0}};
  comm.hops = {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}};

  return assemble_model(std::move(servers), std::move(catalog), std::move(placement),
                        std::move(comm));
}

namespace {

struct SlotCosts {
  double m = 0.0;
  double g = 0.0;
  std::int64_t residual = 0;
};

// Seeds the shared starting state: a processed request waiting at the first
// hop, backlogs 2 and 1 at the second hop's two instances.
void seed_state(QueueSystem& qs) {
  qs.seed_carry_request(0, 0, 0);
  qs.set_carry_nominal(0, 1);
  qs.seed_backlog_request(1, 0, 0);
  qs.seed_backlog_request(1, 0, 0);
  qs.seed_backlog_request(2, 0, 0);
}

SlotCosts play_slot(QueueSystem& qs, const Model& m, const DecisionSet& d, std::int64_t slot,
                    int truth_far) {
  qs.apply_admission(d);
  auto flows = qs.apply_forwarding(d);
  SlotCosts out;
  out.m = slot_comm_cost(flows, m.comm, CostAccounting::Actual);
  qs.apply_processing(d, slot);
  out.g = slot_energy_cost(d.alloc, m);
  std::vector<int> far = {truth_far};
  qs.advance_windows(far, slot + 1);
  out.residual = qs.total_backlog();
  return out;
}

void expect(std::vector<std::string>& bad, const std::string& what, double got, double want) {
  if (got != want) {
    std::ostringstream os;
    os << what << ": got " << got << ", want " << want;
    bad.push_back(os.str());
  }
}

}  // namespace

std::vector<std::string> golden_check() {
  std::vector<std::string> bad;

  // Forced choice 1: forward over the cheap link, queues end uneven.
  {
    Model m = golden_model(0);
    QueueSystem qs(m, ForecasterSpec{}, 1, {{1}});
    seed_state(qs);
    DecisionSet d;
    d.admit = {{{0, 1}}};
    d.admit_depth = {{1}};
    d.forward = {{Batch{1, 1}}, {}, {}};
    d.alloc = {1, 2, 1};
    SlotCosts c = play_slot(qs, m, d, 0, 0);
    expect(bad, "choice 1 transfer cost", c.m, 1);
    expect(bad, "choice 1 processing cost", c.g, 4);
    expect(bad, "choice 1 total cost", c.m + c.g, 5);
    expect(bad, "choice 1 residual backlog", static_cast<double>(c.residual), 1);
  }

  // Forced choice 2: forward over the dear link, queues end balanced.
  {
    Model m = golden_model(0);
    QueueSystem qs(m, ForecasterSpec{}, 1, {{1}});
    seed_state(qs);
    DecisionSet d;
    d.admit = {{{0, 1}}};
    d.admit_depth = {{1}};
    d.forward = {{Batch{2, 1}}, {}, {}};
    d.alloc = {1, 2, 2};
    SlotCosts c = play_slot(qs, m, d, 0, 0);
    expect(bad, "choice 2 transfer cost", c.m, 2);
    expect(bad, "choice 2 processing cost", c.g, 5);
    expect(bad, "choice 2 total cost", c.m + c.g, 7);
    expect(bad, "choice 2 residual backlog", static_cast<double>(c.residual), 0);
  }

  // Pre-service: the next slot's request is admitted early and rides the
  // spare capacity at the first hop, finishing the moment it truly arrives.
  {
    Model m = golden_model(1);
    QueueSystem qs(m, ForecasterSpec{}, 1, {{1, 1}});
    seed_state(qs);
    DecisionSet d0;
    d0.admit = {{{0, 2}}};
    d0.admit_depth = {{1, 1}};
    d0.forward = {{Batch{2, 1}}, {}, {}};
    d0.alloc = {2, 2, 2};
    SlotCosts c0 = play_slot(qs, m, d0, 0, 0);
    expect(bad, "pre-service slot 0 processing cost", c0.g, 6);
    expect(bad, "pre-service slot 0 residual", static_cast<double>(c0.residual), 0);

    DecisionSet d1;
    d1.admit = {{}};
    d1.admit_depth = {{}};
    d1.forward = {{Batch{1, 2}}, {}, {}};
    d1.alloc = {0, 2, 0};
    play_slot(qs, m, d1, 1, 0);

    bool found = false;
    for (const auto& r : qs.registry().all()) {
      if (r.arrival_slot != 1 || r.phantom) continue;
      found = true;
      if (!r.completed()) {
        bad.push_back("pre-service: the future request never finished");
      } else {
        expect(bad, "pre-service future request response (ms)", response_time_ms(r, 10.0), 0);
      }
    }
    if (!found) bad.push_back("pre-service: no request with the future arrival slot");
  }

  return bad;
}

}  // namespace poscars
