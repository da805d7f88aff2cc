#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "coflowsim/dcoflow.hpp"
#include "coflowsim/traffic.hpp"
#include "test_util.hpp"

using namespace coflowsim;

namespace {

const double kEps = 0.1;

LoadMatrix example_load() {
  return build_load_matrix(Fabric::uniform(4), motivating_example(kEps));
}

// Two-machine instance where the second rejection pass matters: A fits alone,
// Y is hopeless, and X becomes feasible again once Y is dropped.
std::vector<Coflow> second_chance_instance() {
  const Fabric fabric = Fabric::uniform(2);
  std::vector<Coflow> out(3);
  out[0] = Coflow{1, {Flow{1, 0, 1, 3, 1.0}}, 1.0, 0.0};
  out[1] = Coflow{2, {Flow{2, 0, 0, 2, 5.0}, Flow{2, 1, 1, 3, 1.5}}, 4.5, 0.0};
  out[2] = Coflow{3, {Flow{3, 0, 1, 3, 4.0}}, 5.05, 0.0};
  return out;
}

}  // namespace

TEST_SUITE("dcoflow") {

TEST_CASE("bottleneck port") {
  const LoadMatrix load = example_load();
  const std::vector<int> all = {1, 2, 3, 4, 5};
  // Every loaded port totals 2 + eps; the tie goes to the lowest port id.
  CHECK(bottleneck_port(load, all) == 0);

  const std::vector<int> one = {3};
  CHECK(bottleneck_port(load, one) == 1);  // its ingress and egress tie

  const Fabric fabric = Fabric::uniform(2);
  std::vector<Coflow> two(2);
  two[0] = Coflow{0, {Flow{0, 0, 0, 2, 5.0}}, 10.0, 0.0};
  two[1] = Coflow{1, {Flow{1, 0, 1, 3, 7.0}}, 10.0, 0.0};
  const LoadMatrix load2 = build_load_matrix(fabric, two);
  const std::vector<int> both = {0, 1};
  CHECK(bottleneck_port(load2, both) == 1);
}

TEST_CASE("deadline feasible set") {
  const LoadMatrix load = example_load();
  const std::vector<int> all = {1, 2, 3, 4, 5};
  // Total load 2 + eps exceeds both deadlines on the bottleneck.
  CHECK(deadline_feasible_set(load, all, 0).empty());

  const std::vector<int> one = {2};
  CHECK(deadline_feasible_set(load, one, 0) == std::vector<int>{2});

  const Fabric fabric = Fabric::uniform(2);
  std::vector<Coflow> pair(2);
  pair[0] = Coflow{0, {Flow{0, 0, 0, 2, 1.0}}, 3.0, 0.0};
  pair[1] = Coflow{1, {Flow{1, 0, 0, 3, 1.5}}, 2.0, 0.0};
  const LoadMatrix load2 = build_load_matrix(fabric, pair);
  const std::vector<int> both = {0, 1};
  CHECK(deadline_feasible_set(load2, both, 0) == std::vector<int>{0});
}

TEST_CASE("psi scores on the worked example") {
  const LoadMatrix load = example_load();
  const std::vector<int> all = {1, 2, 3, 4, 5};
  const PsiTable psi = psi_table(load, all);

  CHECK(psi.psi(0, 1) == doctest::Approx(-(1.0 + kEps)));
  CHECK(psi.psi(0, 2) == doctest::Approx((1.0 + kEps) * (2.0 - (2.0 + kEps))));
  CHECK(psi.psi(1, 2) == 0.0);  // singleton 2 does not touch machine 1

  // Aggregate deficits: the wide coflow pays on all 8 directed ports, each
  // singleton on its 2. (The per-machine view halves these; the argmin is
  // unaffected.)
  double wide = 0.0, single = 0.0;
  for (int port = 0; port < load.num_ports(); ++port) {
    if (psi.psi(port, 1) < 0.0) wide += psi.psi(port, 1);
    if (psi.psi(port, 2) < 0.0) single += psi.psi(port, 2);
  }
  CHECK(wide == doctest::Approx(-8.0 * (1.0 + kEps)));
  CHECK(single == doctest::Approx(-2.0 * kEps * (1.0 + kEps)));
}

TEST_CASE("psi sign tracks the deadline slack") {
  std::mt19937_64 rng(83);
  const Fabric fabric = Fabric::uniform(3);
  const auto coflows = testutil::random_coflows(rng, fabric, 7);
  const LoadMatrix load = build_load_matrix(fabric, coflows);

  std::vector<int> set;
  for (const Coflow& c : coflows) set.push_back(c.id);
  const PsiTable psi = psi_table(load, set);

  for (int port = 0; port < fabric.num_ports(); ++port) {
    double total = 0.0;
    for (int id : set) total += load.processing_time(port, id);
    for (int id : set) {
      const double p = load.processing_time(port, id);
      const double value = psi.psi(port, id);
      if (p == 0.0) {
        CHECK(value == 0.0);
      } else {
        const double slack = load.deadline(id) - total;
        CHECK(((value > 0.0) == (slack > 0.0)));
        CHECK(((value < 0.0) == (slack < 0.0)));
      }
    }
  }
}

TEST_CASE("rejection candidates") {
  const LoadMatrix load = example_load();
  const std::vector<int> all = {1, 2, 3, 4, 5};
  CHECK(reject_candidate_v1(load, all, 0) == 1);
  // Any threshold picks the wide coflow: every loaded port ties.
  for (double gamma : {0.05, 0.25, 0.5, 0.75, 0.9, 1.0}) {
    CHECK(reject_candidate_v2(load, all, 0, gamma) == 1);
  }

  const std::vector<int> single = {2};
  CHECK(reject_candidate_v1(load, single, 0) == 2);

  // Three coflows on one port pair, total 7: deficits are 0 (psi positive),
  // -6 (two ports at -3) and 0 (psi exactly zero); the -6 one goes.
  const Fabric fabric = Fabric::uniform(2);
  std::vector<Coflow> three(3);
  three[0] = Coflow{0, {Flow{0, 0, 0, 2, 1.0}}, 10.0, 0.0};
  three[1] = Coflow{1, {Flow{1, 0, 0, 2, 1.0}}, 4.0, 0.0};
  three[2] = Coflow{2, {Flow{2, 0, 0, 2, 5.0}}, 7.0, 0.0};
  const LoadMatrix load2 = build_load_matrix(fabric, three);
  const std::vector<int> s = {0, 1, 2};
  CHECK(reject_candidate_v1(load2, s, 0) == 1);
}

TEST_CASE("v2 port filter can overrule the all-port deficit") {
  const Fabric fabric = Fabric::uniform(2);
  std::vector<Coflow> coflows(2);
  coflows[0] = Coflow{1, {Flow{1, 0, 0, 2, 1.0}, Flow{1, 1, 1, 3, 5.0}}, 2.0, 0.0};
  coflows[1] = Coflow{2, {Flow{2, 0, 0, 2, 9.0}}, 8.0, 0.0};
  const LoadMatrix load = build_load_matrix(fabric, coflows);
  const std::vector<int> both = {1, 2};

  REQUIRE(bottleneck_port(load, both) == 0);  // load 10 vs 5 on machine 1
  // With gamma = 0.8 only the machine-0 ports (load 10) qualify: B's -36
  // beats A's -16. With gamma = 0.4 the side ports join and A's -46 wins.
  CHECK(reject_candidate_v2(load, both, 0, 0.8) == 2);
  CHECK(reject_candidate_v2(load, both, 0, 0.4) == 1);
  // All psi values on used ports are negative here, so v1 matches the
  // all-ports-included v2 score.
  CHECK(reject_candidate_v1(load, both, 0) == 1);
}

TEST_CASE("cct estimate") {
  const LoadMatrix load = example_load();

  const std::vector<int> alone = {2};
  CHECK(eval_cct(load, alone) == doctest::Approx(1.0 + kEps));

  const std::vector<int> pair = {2, 1};
  CHECK(eval_cct(load, pair) == doctest::Approx(2.0 + kEps));

  // Appending can only push later estimates up.
  std::mt19937_64 rng(5);
  const Fabric fabric = Fabric::uniform(3);
  const auto coflows = testutil::random_coflows(rng, fabric, 8);
  const LoadMatrix rload = build_load_matrix(fabric, coflows);
  std::vector<int> prefix;
  double prev = 0.0;
  for (const Coflow& c : coflows) {
    prefix.push_back(c.id);
    const double est = eval_cct(rload, prefix);
    CHECK(est >= prev);
    CHECK(est >= isolation_cct(fabric, c));
    prev = est;
  }
}

TEST_CASE("ordering on the worked example") {
  const Fabric fabric = Fabric::uniform(4);
  const auto coflows = motivating_example(kEps);

  for (const DcoflowVariant variant : {DcoflowVariant::v1, DcoflowVariant::v2}) {
    DcoflowConfig cfg;
    cfg.variant = variant;
    std::vector<DcoflowRound> trace;
    const Schedule schedule = dcoflow_order(fabric, coflows, cfg, &trace);

    CHECK(schedule.rejected == std::vector<int>{1});
    std::vector<int> accepted = schedule.sigma;
    std::sort(accepted.begin(), accepted.end());
    CHECK(accepted == std::vector<int>{2, 3, 4, 5});

    REQUIRE(trace.size() == 5);
    CHECK(trace[0].bottleneck_port == 0);
    CHECK(trace[0].rejected);
    CHECK(trace[0].selected == 1);
    for (size_t r = 1; r < trace.size(); ++r) CHECK_FALSE(trace[r].rejected);
  }
}

TEST_CASE("ordering on the M-machine generalization") {
  for (int m : {4, 8, 16}) {
    const Fabric fabric = Fabric::uniform(m);
    const auto coflows = motivating_example_generalized(m, kEps);
    const Schedule schedule = dcoflow_order(fabric, coflows);
    CHECK(schedule.rejected == std::vector<int>{1});
    CHECK(static_cast<int>(schedule.sigma.size()) == m - 1);
  }
}

TEST_CASE("single feasible coflow is accepted") {
  const Fabric fabric = Fabric::uniform(2);
  std::vector<Coflow> one(1);
  one[0] = Coflow{4, {Flow{4, 0, 0, 2, 2.0}}, 2.0, 0.0};  // T equals its isolation CCT
  const Schedule schedule = dcoflow_order(fabric, one);
  CHECK(schedule.sigma == std::vector<int>{4});
  CHECK(schedule.rejected.empty());
}

TEST_CASE("zero-volume coflows are admitted, never rejected") {
  const Fabric fabric = Fabric::uniform(2);
  std::vector<Coflow> coflows(2);
  coflows[0] = Coflow{0, {Flow{0, 0, 0, 2, 0.0}}, 1.0, 0.0};
  coflows[1] = Coflow{1, {Flow{1, 0, 0, 2, 3.0}}, 3.0, 0.0};
  const Schedule schedule = dcoflow_order(fabric, coflows);
  CHECK(schedule.accepts(0));
  CHECK(schedule.accepts(1));
}

TEST_CASE("late-coflow removal") {
  const Fabric fabric = Fabric::uniform(4);
  const auto coflows = motivating_example(kEps);
  const LoadMatrix load = build_load_matrix(fabric, coflows);

  SUBCASE("no pre-rejections leaves sigma untouched") {
    const std::vector<int> sigma = {5, 4, 3, 2, 1};
    const Schedule out = remove_late_coflows(load, sigma, std::vector<int>{});
    CHECK(out.sigma == sigma);
    CHECK(out.rejected.empty());
  }

  SUBCASE("the wide coflow placed last is removed") {
    const std::vector<int> sigma = {5, 4, 3, 2, 1};
    const std::vector<int> star = {1};
    const Schedule out = remove_late_coflows(load, sigma, star);
    CHECK(out.sigma == std::vector<int>{5, 4, 3, 2});
    CHECK(out.rejected == std::vector<int>{1});
  }
}

TEST_CASE("a pre-rejected coflow can earn its place back") {
  const Fabric fabric = Fabric::uniform(2);
  const auto coflows = second_chance_instance();
  std::vector<DcoflowRound> trace;
  const Schedule schedule = dcoflow_order(fabric, coflows, {}, &trace);

  REQUIRE(trace.size() == 3);
  CHECK(trace[0].rejected);
  CHECK(trace[0].selected == 3);
  CHECK(trace[1].rejected);
  CHECK(trace[1].selected == 2);
  CHECK_FALSE(trace[2].rejected);

  // Dropping 2 frees enough room for 3 to meet its deadline after 1.
  CHECK(schedule.sigma == std::vector<int>{1, 3});
  CHECK(schedule.rejected == std::vector<int>{2});
}

TEST_CASE("every round removes exactly one coflow") {
  std::mt19937_64 rng(71);
  for (int round = 0; round < 20; ++round) {
    const Fabric fabric = Fabric::uniform(3);
    const auto coflows = testutil::random_coflows(rng, fabric, 7);
    std::vector<DcoflowRound> trace;
    const Schedule schedule = dcoflow_order(fabric, coflows, {}, &trace);

    REQUIRE(trace.size() == coflows.size());
    for (size_t r = 0; r < trace.size(); ++r) {
      CHECK(trace[r].working_set.size() == coflows.size() - r);
    }
    CHECK(schedule.sigma.size() + schedule.rejected.size() == coflows.size());
    for (const Coflow& c : coflows) {
      CHECK((schedule.accepts(c.id) || schedule.rejects(c.id)));
      CHECK_FALSE((schedule.accepts(c.id) && schedule.rejects(c.id)));
    }
  }
}

}  // TEST_SUITE
