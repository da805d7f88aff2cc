#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "coflowsim/errors.hpp"
#include "coflowsim/simulator.hpp"
#include "coflowsim/traffic.hpp"
#include "test_util.hpp"

using namespace coflowsim;

namespace {

const double kEps = 0.1;

Schedule sigma_of(std::vector<int> order) {
  Schedule s;
  s.sigma = std::move(order);
  return s;
}

// Re-derives the blocking argument: a starved flow must have one of its ports
// exhausted by flows the allocator visits strictly earlier.
void check_epoch_invariants(const Fabric& fabric, std::span<const ActiveFlow> flows,
                            std::span<const double> rates) {
  std::vector<double> usage(static_cast<size_t>(fabric.num_ports()), 0.0);
  for (size_t i = 0; i < flows.size(); ++i) {
    usage[static_cast<size_t>(flows[i].ingress_port)] += rates[i];
    usage[static_cast<size_t>(flows[i].egress_port)] += rates[i];
  }
  for (int port = 0; port < fabric.num_ports(); ++port) {
    REQUIRE(usage[static_cast<size_t>(port)] <= fabric.capacity(port) + 1e-9);
  }

  std::vector<size_t> order(flows.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const ActiveFlow& fa = flows[a];
    const ActiveFlow& fb = flows[b];
    if (fa.coflow_rank != fb.coflow_rank) return fa.coflow_rank < fb.coflow_rank;
    if (fa.remaining != fb.remaining) return fa.remaining > fb.remaining;
    if (fa.flow_id != fb.flow_id) return fa.flow_id < fb.flow_id;
    return fa.coflow_id < fb.coflow_id;
  });

  std::vector<double> ahead(static_cast<size_t>(fabric.num_ports()), 0.0);
  for (size_t i : order) {
    if (rates[i] == 0.0) {
      const double in_left =
          fabric.capacity(flows[i].ingress_port) - ahead[static_cast<size_t>(flows[i].ingress_port)];
      const double out_left =
          fabric.capacity(flows[i].egress_port) - ahead[static_cast<size_t>(flows[i].egress_port)];
      REQUIRE(std::min(in_left, out_left) <= 1e-9);
    }
    ahead[static_cast<size_t>(flows[i].ingress_port)] += rates[i];
    ahead[static_cast<size_t>(flows[i].egress_port)] += rates[i];
  }
}

}  // namespace

TEST_SUITE("simulator") {

TEST_CASE("rate allocation follows the priority order") {
  const Fabric fabric = Fabric::uniform(2);

  SUBCASE("shared ingress: the higher priority flow takes the port") {
    std::vector<ActiveFlow> flows = {{0, 0, 0, 2, 5.0, 0}, {1, 0, 0, 3, 5.0, 1}};
    const auto rates = allocate_rates(fabric, flows);
    CHECK(rates[0] == 1.0);
    CHECK(rates[1] == 0.0);
  }

  SUBCASE("disjoint port pairs both run at full rate") {
    std::vector<ActiveFlow> flows = {{0, 0, 0, 2, 5.0, 0}, {1, 0, 1, 3, 5.0, 1}};
    const auto rates = allocate_rates(fabric, flows);
    CHECK(rates[0] == 1.0);
    CHECK(rates[1] == 1.0);
  }
}

TEST_CASE("worked example allocation blocks the wide coflow") {
  const Fabric fabric = Fabric::uniform(4);
  const auto coflows = motivating_example(kEps);

  std::vector<ActiveFlow> flows;
  for (const Coflow& c : coflows) {
    const int rank = c.id == 1 ? 4 : c.id - 2;  // singletons first, wide last
    for (const Flow& f : c.flows) {
      flows.push_back(ActiveFlow{c.id, f.flow_id, f.ingress_port, f.egress_port, f.volume, rank});
    }
  }
  const auto rates = allocate_rates(fabric, flows);
  for (size_t i = 0; i < flows.size(); ++i) {
    CHECK(rates[i] == (flows[i].coflow_id == 1 ? 0.0 : 1.0));
  }
}

TEST_CASE("worked example timings") {
  const Fabric fabric = Fabric::uniform(4);
  const auto coflows = motivating_example(kEps);

  SUBCASE("wide coflow accepted last finishes late") {
    const SimResult result = simulate(fabric, sigma_of({2, 3, 4, 5, 1}), coflows);
    for (int id : {2, 3, 4, 5}) {
      CHECK(*result.outcome(id).completion == doctest::Approx(1.0 + kEps));
      CHECK(result.outcome(id).on_time);
    }
    CHECK(*result.outcome(1).completion == doctest::Approx(2.0 + kEps));
    CHECK_FALSE(result.outcome(1).on_time);
    CHECK(car(result, 5) == 0.8);
    CHECK(prediction_error(sigma_of({2, 3, 4, 5, 1}), result) == doctest::Approx(0.2));
  }

  SUBCASE("wide coflow alone meets its deadline") {
    Schedule only_wide;
    only_wide.sigma = {1};
    only_wide.rejected = {2, 3, 4, 5};
    const SimResult result = simulate(fabric, only_wide, coflows);
    CHECK(*result.outcome(1).completion == doctest::Approx(1.0));
    CHECK(result.outcome(1).on_time);
    CHECK_FALSE(result.outcome(2).completion.has_value());  // rejected: never served
    CHECK(car(result, 5) == 0.2);
  }

  SUBCASE("single coflow completes at its isolation time") {
    const std::vector<Coflow> one = {coflows[0]};
    const SimResult result = simulate(fabric, sigma_of({1}), one);
    CHECK(*result.outcome(1).completion == doctest::Approx(isolation_cct(fabric, one[0])));
  }
}

TEST_CASE("acceptance-rate edge cases") {
  const Fabric fabric = Fabric::uniform(4);
  const auto coflows = motivating_example(kEps);

  Schedule none;
  none.rejected = {1, 2, 3, 4, 5};
  const SimResult result = simulate(fabric, none, coflows);
  CHECK(car(result, 5) == 0.0);
  CHECK_THROWS_AS(car(result, 0), ValidationError);
  CHECK_THROWS_AS(prediction_error(none, result), ValidationError);
}

TEST_CASE("prediction error counts late accepted coflows") {
  const Fabric fabric = Fabric::uniform(4);
  const auto coflows = motivating_example(kEps);
  Schedule s = sigma_of({2, 3, 4, 1});
  s.rejected = {5};
  const SimResult result = simulate(fabric, s, coflows);
  // Three singletons make it; the wide coflow is late: one of four.
  CHECK(prediction_error(s, result) == doctest::Approx(0.25));
}

TEST_CASE("zero-volume flows complete instantly") {
  const Fabric fabric = Fabric::uniform(2);
  std::vector<Coflow> coflows(2);
  coflows[0] = Coflow{0, {Flow{0, 0, 0, 2, 0.0}}, 1.0, 0.0};
  coflows[1] = Coflow{1, {Flow{1, 0, 0, 2, 4.0}}, 4.0, 0.0};
  const SimResult result = simulate(fabric, sigma_of({1, 0}), coflows);
  CHECK(*result.outcome(0).completion == 0.0);
  CHECK(result.outcome(0).on_time);
  CHECK(*result.outcome(1).completion == doctest::Approx(4.0));
}

TEST_CASE("simulator invariants hold on random instances") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> machines(2, 4);
  std::uniform_int_distribution<int> count(2, 8);

  for (int round = 0; round < 60; ++round) {
    const Fabric fabric = Fabric::uniform(machines(rng));
    const auto coflows = testutil::random_coflows(rng, fabric, count(rng));

    Schedule schedule;
    for (const Coflow& c : coflows) schedule.sigma.push_back(c.id);
    std::shuffle(schedule.sigma.begin(), schedule.sigma.end(), rng);

    const SimResult result = simulate(
        fabric, schedule, coflows,
        [&](double, std::span<const ActiveFlow> flows, std::span<const double> rates) {
          check_epoch_invariants(fabric, flows, rates);
        });

    for (const Coflow& c : coflows) {
      REQUIRE(result.outcome(c.id).completion.has_value());
      CHECK(*result.outcome(c.id).completion >= isolation_cct(fabric, c) - 1e-9);
    }

    const SimResult again = simulate(fabric, schedule, coflows);
    for (const Coflow& c : coflows) {
      CHECK(*again.outcome(c.id).completion == *result.outcome(c.id).completion);
    }
  }
}

TEST_CASE("port-cumulative bound stays below the accepted makespan") {
  std::mt19937_64 rng(53);
  for (int round = 0; round < 30; ++round) {
    const Fabric fabric = Fabric::uniform(3);
    const auto coflows = testutil::random_coflows(rng, fabric, 6);
    Schedule schedule;
    for (const Coflow& c : coflows) schedule.sigma.push_back(c.id);

    const LoadMatrix load = build_load_matrix(fabric, coflows);
    double bound = 0.0;
    for (int port = 0; port < fabric.num_ports(); ++port) {
      double total = 0.0;
      for (const Coflow& c : coflows) total += load.processing_time(port, c.id);
      bound = std::max(bound, total);
    }

    const SimResult result = simulate(fabric, schedule, coflows);
    double makespan = 0.0;
    for (const CoflowOutcome& o : result.coflows) makespan = std::max(makespan, *o.completion);
    CHECK(bound <= makespan + 1e-9);
  }
}

}  // TEST_SUITE
