#ifndef COFLOWSIM_TESTS_TEST_UTIL_HPP
#define COFLOWSIM_TESTS_TEST_UTIL_HPP

#include <random>
#include <vector>

#include "coflowsim/coflow.hpp"
#include "coflowsim/fabric.hpp"
#include "coflowsim/load_matrix.hpp"

namespace coflowsim::testutil {

/// Random instance with feasible-in-isolation deadlines (T = U[1,2] * CCT0).
inline std::vector<Coflow> random_coflows(std::mt19937_64& rng, const Fabric& fabric, int n,
                                          int max_flows = 4) {
  std::uniform_int_distribution<int> machine(0, fabric.num_machines() - 1);
  std::uniform_int_distribution<int> flow_count(1, max_flows);
  std::uniform_real_distribution<double> volume(0.1, 5.0);
  std::uniform_real_distribution<double> factor(1.0, 2.0);

  std::vector<Coflow> out;
  for (int id = 0; id < n; ++id) {
    Coflow c;
    c.id = id;
    const int flows = flow_count(rng);
    for (int j = 0; j < flows; ++j) {
      c.flows.push_back(Flow{id, j, fabric.ingress_port(machine(rng)),
                             fabric.egress_port(machine(rng)), volume(rng)});
    }
    c.deadline = factor(rng) * isolation_cct(fabric, c);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace coflowsim::testutil

#endif
