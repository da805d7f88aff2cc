#include "coflowsim/exact.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "coflowsim/errors.hpp"
#include "coflowsim/schedule.hpp"
#include "coflowsim/simulator.hpp"

namespace coflowsim {

namespace {

// DFS over orders of `cols`: a placement is allowed when the placed coflow's
// cumulative load plus its own processing time fits its deadline on every
// port. Placed coflows stay feasible as the order grows, so pruning is safe.
bool find_feasible_order(const LoadMatrix& load, const std::vector<int>& cols,
                         std::vector<double>& cum, std::vector<bool>& used,
                         std::vector<int>& order) {
  if (order.size() == cols.size()) return true;
  for (size_t i = 0; i < cols.size(); ++i) {
    if (used[i]) continue;
    const int col = cols[i];
    bool fits = true;
    for (int port = 0; port < load.num_ports() && fits; ++port) {
      if (cum[static_cast<size_t>(port)] + load.ptime_col(port, col) >
          load.deadline_col(col)) {
        fits = false;
      }
    }
    if (!fits) continue;
    used[i] = true;
    order.push_back(col);
    for (int port = 0; port < load.num_ports(); ++port) {
      cum[static_cast<size_t>(port)] += load.ptime_col(port, col);
    }
    if (find_feasible_order(load, cols, cum, used, order)) return true;
    for (int port = 0; port < load.num_ports(); ++port) {
      cum[static_cast<size_t>(port)] -= load.ptime_col(port, col);
    }
    order.pop_back();
    used[i] = false;
  }
  return false;
}

}  // namespace

double parallel_potential(const LoadMatrix& load, std::span<const int> subset, int port) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int id : subset) {
    const double p = load.processing_time(port, id);
    sum += p;
    sum_sq += p * p;
  }
  return 0.5 * sum_sq + 0.5 * sum * sum;
}

bool check_parallel_inequality(const LoadMatrix& load, std::span<const int> subset, int port) {
  double lhs = 0.0;
  for (int id : subset) {
    lhs += load.processing_time(port, id) * load.deadline(id);
  }
  return lhs >= parallel_potential(load, subset, port);
}

bool p2_feasible_subset(const LoadMatrix& load, std::span<const int> subset,
                        std::vector<int>* witness) {
  std::vector<int> cols;
  cols.reserve(subset.size());
  for (int id : subset) cols.push_back(load.column_of(id));

  std::vector<double> cum(static_cast<size_t>(load.num_ports()), 0.0);
  std::vector<bool> used(cols.size(), false);
  std::vector<int> order;
  if (!find_feasible_order(load, cols, cum, used, order)) return false;
  if (witness) {
    witness->clear();
    for (int col : order) witness->push_back(load.id_of_col(col));
  }
  return true;
}

OracleResult oracle_p2(const LoadMatrix& load, int limit) {
  const int n = load.num_coflows();
  if (n > limit) {
    throw ValidationError("ordering oracle limited to " + std::to_string(limit) +
                          " coflows, got " + std::to_string(n));
  }

  // Feasibility is monotone under removing coflows, so scan sizes downward.
  for (int size = n; size >= 1; --size) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (std::popcount(mask) != size) continue;
      std::vector<int> subset;
      for (int c = 0; c < n; ++c) {
        if (mask & (1u << c)) subset.push_back(load.id_of_col(c));
      }
      std::vector<int> witness;
      if (p2_feasible_subset(load, subset, &witness)) {
        return OracleResult{size, std::move(witness)};
      }
    }
  }
  return OracleResult{0, {}};
}

OracleResult oracle_sigma_car(const Fabric& fabric, std::span<const Coflow> coflows, int limit) {
  const int n = static_cast<int>(coflows.size());
  if (n > limit) {
    throw ValidationError("sigma oracle limited to " + std::to_string(limit) + " coflows, got " +
                          std::to_string(n));
  }

  OracleResult best{0, {}};
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> subset;
    for (int c = 0; c < n; ++c) {
      if (mask & (1u << c)) subset.push_back(coflows[static_cast<size_t>(c)].id);
    }
    if (static_cast<int>(subset.size()) <= best.best_count && mask != 0) continue;

    std::sort(subset.begin(), subset.end());
    do {
      Schedule schedule;
      schedule.sigma = subset;
      const SimResult result = simulate(fabric, schedule, coflows);
      int on_time = 0;
      for (const CoflowOutcome& o : result.coflows) {
        if (o.on_time) ++on_time;
      }
      if (on_time > best.best_count) {
        best.best_count = on_time;
        best.witness = subset;
      }
    } while (std::next_permutation(subset.begin(), subset.end()));
  }
  return best;
}

}  // namespace coflowsim
