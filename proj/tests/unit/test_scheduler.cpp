#include <doctest.h>

#include "poscars/golden.hpp"
#include "poscars/scheduler.hpp"

using namespace poscars;

namespace {

// Ingress hosted on two servers so the admission spread is observable.
Model two_ingress_model() {
  std::vector<Server> servers{Server{0, {4}, {1}}, Server{1, {4}, {1}}};
  Catalog catalog;
  for (int v = 0; v < 2; ++v) {
    VnfSpec vnf;
    vnf.id = v;
    vnf.service = 0;
    vnf.position = v + 1;
    vnf.theta = {1};
    vnf.phi_max = 4;
    vnf.options = {{0}, {1}};
    catalog.vnfs.push_back(std::move(vnf));
  }
  catalog.services.push_back(ServiceChainSpec{0, {0, 1}, 0});
  Placement placement;
  placement.hosts = {{0, 1}, {1}};
  placement.hosted = {{0}, {0, 1}};
  CommCostMatrix comm;
  comm.cost = {{0, 1}, {1, 0}};
  comm.hops = {{0, 1}, {1, 0}};
  return assemble_model(std::move(servers), std::move(catalog), std::move(placement),
                        std::move(comm));
}

// Two chain hops sharing one server, for allocation contention.
Model contended_model() {
  std::vector<Server> servers{Server{0, {3}, {1}}};
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
  catalog.services.push_back(ServiceChainSpec{0, {0, 1}, 0});
  Placement placement;
  placement.hosts = {{0}, {0}};
  placement.hosted = {{0, 1}};
  CommCostMatrix comm;
  comm.cost = {{0}};
  comm.hops = {{0}};
  return assemble_model(std::move(servers), std::move(catalog), std::move(placement),
                        std::move(comm));
}

}  // namespace

TEST_CASE("chaining score prices traffic and congestion per carried request") {
  CHECK(chaining_score(10.0, 2.0, 5.0, 3, 4) == doctest::Approx(140.0));
  CHECK(chaining_score(10.0, 2.0, 5.0, 3, 0) == doctest::Approx(0.0));
}

TEST_CASE("net cost balances energy price against queue relief") {
  ControlParams p{10.0, 10.0, 1.0};
  VnfSpec vnf;
  vnf.theta = {2};
  vnf.phi_max = 10;
  vnf.options = {{0}, {3}};
  ResourceVec unit_cost{2};
  CHECK(net_cost(p, unit_cost, 4, vnf, vnf.options[1]) == doctest::Approx(-180.0));
  CHECK(net_cost(p, unit_cost, 0, vnf, vnf.options[1]) == doctest::Approx(60.0));
  CHECK(net_cost(p, unit_cost, 4, vnf, vnf.options[0]) == doctest::Approx(0.0));
}

TEST_CASE("admission takes the whole backlog only while ingress queues are cheap") {
  Model m = golden_model(1);
  ControlParams p{10.0, 10.0, 1.0};

  SUBCASE("empty ingress admits everything") {
    QueueSystem qs(m, ForecasterSpec{}, 1, {{3, 2}});
    AdmissionDecision d = decide_admission(m, qs, p);
    CHECK(d.admit[0] == std::vector<std::pair<int, int>>{{0, 5}});
    CHECK(d.admit_depth[0] == std::vector<int>{3, 2});
  }
  SUBCASE("a loaded ingress throttles to the untreated arrivals") {
    QueueSystem qs(m, ForecasterSpec{}, 1, {{3, 2}});
    qs.seed_backlog_request(0, 0, 0);  // alpha * 1 = 10 > qp = 5
    AdmissionDecision d = decide_admission(m, qs, p);
    CHECK(d.admit[0] == std::vector<std::pair<int, int>>{{0, 3}});
    CHECK(d.admit_depth[0] == std::vector<int>{3, 0});
  }
  SUBCASE("decisions stay applicable") {
    QueueSystem qs(m, ForecasterSpec{}, 1, {{3, 2}});
    AdmissionDecision a = decide_admission(m, qs, p);
    DecisionSet d;
    d.admit = a.admit;
    d.admit_depth = a.admit_depth;
    CHECK_NOTHROW(qs.apply_admission(d));
  }
}

TEST_CASE("admission spreads evenly over the least-loaded ingress servers") {
  Model m = two_ingress_model();
  ControlParams p{10.0, 10.0, 1.0};

  SUBCASE("equal queues split with the remainder on the lower id") {
    QueueSystem qs(m, ForecasterSpec{}, 1, {{5}});
    AdmissionDecision d = decide_admission(m, qs, p);
    CHECK(d.admit[0] == std::vector<std::pair<int, int>>{{0, 3}, {1, 2}});
  }
  SUBCASE("only the least-loaded server receives") {
    QueueSystem qs(m, ForecasterSpec{}, 1, {{5}});
    qs.seed_backlog_request(m.index.id_of(0, 0), 0, 0);
    qs.seed_backlog_request(m.index.id_of(0, 0), 0, 0);
    AdmissionDecision d = decide_admission(m, qs, p);
    CHECK(d.admit[0] == std::vector<std::pair<int, int>>{{1, 5}});
  }
  SUBCASE("zero admission emits no pairs") {
    Model g = golden_model(1);
    QueueSystem qs(g, ForecasterSpec{}, 1, {{0, 4}});  // nothing untreated
    qs.seed_backlog_request(0, 0, 0);                  // alpha * 1 > qp = 4
    AdmissionDecision d = decide_admission(g, qs, p);
    CHECK(d.admit[0].empty());
    CHECK(d.admit_depth[0] == std::vector<int>{0, 0});
  }
}

TEST_CASE("chaining picks the cheapest successor and flips with V") {
  Model m = golden_model(0);
  QueueSystem qs(m, ForecasterSpec{}, 1, {{0}});
  for (int i = 0; i < 3; ++i) qs.seed_carry_request(0, 0, 0);
  qs.seed_backlog_request(1, 0, 0);
  qs.seed_backlog_request(1, 0, 0);
  qs.seed_backlog_request(2, 0, 0);

  SUBCASE("low V follows the queues") {
    auto f = decide_chaining(m, qs, ControlParams{1.0, 10.0, 1.0});
    CHECK(f[0] == std::vector<Batch>{Batch{2, 3}});  // 21 vs 12
    CHECK(f[1].empty());
    CHECK(f[2].empty());
  }
  SUBCASE("high V follows the traffic cost") {
    auto f = decide_chaining(m, qs, ControlParams{100.0, 10.0, 1.0});
    CHECK(f[0] == std::vector<Batch>{Batch{1, 3}});  // 120 vs 210
  }
  SUBCASE("exact ties go to the lower server id") {
    auto f = decide_chaining(m, qs, ControlParams{0.0, 0.0, 1.0});
    CHECK(f[0] == std::vector<Batch>{Batch{1, 3}});
  }
  SUBCASE("zero carry still designates") {
    QueueSystem empty(m, ForecasterSpec{}, 1, {{0}});
    auto f = decide_chaining(m, empty, ControlParams{1.0, 10.0, 1.0});
    CHECK(f[0] == std::vector<Batch>{Batch{1, 0}});
  }
}

TEST_CASE("allocation grants only options that pay for themselves") {
  Model m = golden_model(0);
  ControlParams p{10.0, 10.0, 1.0};

  SUBCASE("a deep queue earns the largest option") {
    QueueSystem qs(m, ForecasterSpec{}, 1, {{0}});
    for (int i = 0; i < 3; ++i) qs.seed_backlog_request(0, 0, 0);
    std::vector<int> a = decide_allocation(m, qs, p);
    CHECK(a[0] == 2);  // net -40 beats -20
    CHECK(a[1] == 0);
    CHECK(a[2] == 0);
  }
  SUBCASE("a huge V shuts everything off") {
    QueueSystem qs(m, ForecasterSpec{}, 1, {{0}});
    for (int i = 0; i < 3; ++i) qs.seed_backlog_request(0, 0, 0);
    std::vector<int> a = decide_allocation(m, qs, ControlParams{1000.0, 10.0, 1.0});
    CHECK(a == std::vector<int>{0, 0, 0});
  }
  SUBCASE("a break-even option is not granted") {
    QueueSystem qs(m, ForecasterSpec{}, 1, {{0}});
    qs.seed_backlog_request(0, 0, 0);  // every net cost lands exactly on zero
    std::vector<int> a = decide_allocation(m, qs, p);
    CHECK(a[0] == 0);
  }
}

TEST_CASE("allocation falls back to smaller options when capacity runs out") {
  Model m = contended_model();
  QueueSystem qs(m, ForecasterSpec{}, 1, {{0}});
  int first = m.index.id_of(0, 0);
  int second = m.index.id_of(1, 0);
  for (int i = 0; i < 5; ++i) qs.seed_backlog_request(first, 0, 0);
  for (int i = 0; i < 4; ++i) qs.seed_backlog_request(second, 0, 0);

  std::vector<int> a = decide_allocation(m, qs, ControlParams{10.0, 10.0, 1.0});
  // the deeper queue takes {2}; the other's {2} no longer fits but {1} does
  CHECK(a[static_cast<std::size_t>(first)] == 2);
  CHECK(a[static_cast<std::size_t>(second)] == 1);
}

TEST_CASE("chaining and allocation are invariant to a common V and alpha scale") {
  Model m = golden_model(0);
  QueueSystem qs(m, ForecasterSpec{}, 1, {{0}});
  for (int i = 0; i < 4; ++i) qs.seed_backlog_request(0, 0, 0);
  for (int i = 0; i < 2; ++i) qs.seed_backlog_request(1, 0, 0);
  qs.seed_backlog_request(2, 0, 0);
  qs.seed_carry_request(0, 0, 0);

  ControlParams p{3.0, 7.0, 1.0};
  ControlParams scaled{21.0, 49.0, 1.0};
  CHECK(decide_chaining(m, qs, p) == decide_chaining(m, qs, scaled));
  CHECK(decide_allocation(m, qs, p) == decide_allocation(m, qs, scaled));
}

TEST_CASE("the greedy decisions minimize the slot objective over perturbations") {
  Model m = golden_model(0);
  QueueSystem qs(m, ForecasterSpec{}, 1, {{0}});
  for (int i = 0; i < 3; ++i) qs.seed_carry_request(0, 0, 0);
  for (int i = 0; i < 4; ++i) qs.seed_backlog_request(0, 0, 0);
  qs.seed_backlog_request(1, 0, 0);
  qs.seed_backlog_request(1, 0, 0);
  qs.seed_backlog_request(2, 0, 0);
  ControlParams p{1.0, 10.0, 1.0};

  AdmissionDecision a = decide_admission(m, qs, p);
  DecisionSet chosen;
  chosen.admit = a.admit;
  chosen.admit_depth = a.admit_depth;
  chosen.forward = decide_chaining(m, qs, p);
  chosen.alloc = decide_allocation(m, qs, p);
  double j = slot_objective(m, qs, chosen, p);
  CHECK(j == doctest::Approx(-98.0));

  DecisionSet flipped = chosen;
  flipped.forward[0] = {Batch{1, 3}};  // steer to the busier successor
  CHECK(slot_objective(m, qs, flipped, p) > j);

  DecisionSet idle = chosen;
  idle.alloc = {0, 0, 0};
  CHECK(slot_objective(m, qs, idle, p) > j);
}
