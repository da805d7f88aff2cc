#ifndef COFLOWSIM_EXACT_HPP
#define COFLOWSIM_EXACT_HPP

#include <span>
#include <vector>

#include "coflowsim/coflow.hpp"
#include "coflowsim/fabric.hpp"
#include "coflowsim/load_matrix.hpp"

namespace coflowsim {

struct OracleResult {
  int best_count = 0;
  std::vector<int> witness;  // coflow ids, priority order
};

/// Port potential f_l(S) = 1/2 sum p^2 + 1/2 (sum p)^2 over the subset.
double parallel_potential(const LoadMatrix& load, std::span<const int> subset, int port);

/// Necessary condition for any jointly acceptable subset:
/// sum_{k in S} p_{l,k} T_k >= f_l(S).
bool check_parallel_inequality(const LoadMatrix& load, std::span<const int> subset, int port);

/// True when the subset admits an order where every coflow, on every port,
/// has its cumulative predecessor load plus its own processing time within
/// its deadline (the port-independent completion bound).
bool p2_feasible_subset(const LoadMatrix& load, std::span<const int> subset,
                        std::vector<int>* witness = nullptr);

/// Combinatorial solution of the ordering upper bound: largest subset with a
/// feasible order under the port-cumulative completion bound. Enumeration,
/// desk scale only; throws ValidationError above `limit` coflows.
OracleResult oracle_p2(const LoadMatrix& load, int limit = 9);

/// Ground truth for sigma-order scheduling: enumerate accepted subsets and
/// priority orders, simulate each, and maximize the number of coflows that
/// finish within the deadline. Throws ValidationError above `limit` coflows.
OracleResult oracle_sigma_car(const Fabric& fabric, std::span<const Coflow> coflows, int limit = 7);

}  // namespace coflowsim

#endif
