#include "coflowsim/dcoflow.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <string>

#include "coflowsim/errors.hpp"

namespace coflowsim {

namespace {

std::vector<int> to_columns(const LoadMatrix& load, std::span<const int> ids) {
  std::vector<int> cols;
  cols.reserve(ids.size());
  for (int id : ids) cols.push_back(load.column_of(id));
  return cols;
}

// Total processing time per port over the given columns.
std::vector<double> port_totals(const LoadMatrix& load, std::span<const int> cols) {
  std::vector<double> tot(static_cast<size_t>(load.num_ports()), 0.0);
  for (int port = 0; port < load.num_ports(); ++port) {
    double s = 0.0;
    for (int col : cols) s += load.ptime_col(port, col);
    tot[static_cast<size_t>(port)] = s;
  }
  return tot;
}

int argmax_port(const std::vector<double>& totals) {
  int best = 0;
  for (int port = 1; port < static_cast<int>(totals.size()); ++port) {
    if (totals[static_cast<size_t>(port)] > totals[static_cast<size_t>(best)]) best = port;
  }
  return best;
}

// v1 score: sum of the coflow's negative psi values over every port.
double v1_score(const LoadMatrix& load, const std::vector<double>& totals, int col) {
  const double t = load.deadline_col(col);
  double score = 0.0;
  for (int port = 0; port < load.num_ports(); ++port) {
    const double p = load.ptime_col(port, col);
    if (p <= 0.0) continue;
    const double psi = p * (t - totals[static_cast<size_t>(port)]);
    if (psi < 0.0) score += psi;
  }
  return score;
}

// v2 score: sum of psi over ports loaded at least gamma times the bottleneck.
double v2_score(const LoadMatrix& load, const std::vector<double>& totals, int col,
                double threshold) {
  const double t = load.deadline_col(col);
  double score = 0.0;
  for (int port = 0; port < load.num_ports(); ++port) {
    if (totals[static_cast<size_t>(port)] < threshold) continue;
    const double p = load.ptime_col(port, col);
    if (p <= 0.0) continue;
    score += p * (t - totals[static_cast<size_t>(port)]);
  }
  return score;
}

// argmin over candidate columns, ties to the lowest coflow id.
template <typename ScoreFn>
int argmin_candidate(const LoadMatrix& load, std::span<const int> candidate_cols, ScoreFn&& score) {
  int best_col = -1;
  double best_score = std::numeric_limits<double>::infinity();
  for (int col : candidate_cols) {
    const double s = score(col);
    if (best_col < 0 || s < best_score ||
        (s == best_score && load.id_of_col(col) < load.id_of_col(best_col))) {
      best_col = col;
      best_score = s;
    }
  }
  return best_col;
}

}  // namespace

PsiTable::PsiTable(const LoadMatrix* load, std::vector<int> working_set,
                   std::vector<double> values)
    : load_(load), set_(std::move(working_set)), values_(std::move(values)) {}

double PsiTable::psi(int port, int coflow_id) const {
  auto it = std::lower_bound(set_.begin(), set_.end(), coflow_id);
  if (it == set_.end() || *it != coflow_id) {
    throw StructuralError("coflow " + std::to_string(coflow_id) + " not in the working set");
  }
  const size_t idx = static_cast<size_t>(it - set_.begin());
  return values_[static_cast<size_t>(port) * set_.size() + idx];
}

int bottleneck_port(const LoadMatrix& load, std::span<const int> working_set) {
  const std::vector<int> cols = to_columns(load, working_set);
  return argmax_port(port_totals(load, cols));
}

std::vector<int> deadline_feasible_set(const LoadMatrix& load, std::span<const int> working_set,
                                       int port) {
  const std::vector<int> cols = to_columns(load, working_set);
  double total = 0.0;
  for (int col : cols) total += load.ptime_col(port, col);

  std::vector<int> feasible;
  for (int col : cols) {
    if (load.ptime_col(port, col) > 0.0 && total <= load.deadline_col(col)) {
      feasible.push_back(load.id_of_col(col));
    }
  }
  std::sort(feasible.begin(), feasible.end());
  return feasible;
}

PsiTable psi_table(const LoadMatrix& load, std::span<const int> working_set) {
  std::vector<int> ids(working_set.begin(), working_set.end());
  std::sort(ids.begin(), ids.end());
  const std::vector<int> cols = to_columns(load, ids);
  const std::vector<double> totals = port_totals(load, cols);

  std::vector<double> values(static_cast<size_t>(load.num_ports()) * cols.size(), 0.0);
  for (int port = 0; port < load.num_ports(); ++port) {
    for (size_t i = 0; i < cols.size(); ++i) {
      const double p = load.ptime_col(port, cols[i]);
      if (p > 0.0) {
        values[static_cast<size_t>(port) * cols.size() + i] =
            p * (load.deadline_col(cols[i]) - totals[static_cast<size_t>(port)]);
      }
    }
  }
  return PsiTable(&load, std::move(ids), std::move(values));
}

int reject_candidate_v1(const LoadMatrix& load, std::span<const int> working_set, int bottleneck) {
  const std::vector<int> cols = to_columns(load, working_set);
  const std::vector<double> totals = port_totals(load, cols);
  std::vector<int> candidates;
  for (int col : cols) {
    if (load.ptime_col(bottleneck, col) > 0.0) candidates.push_back(col);
  }
  const int col =
      argmin_candidate(load, candidates, [&](int c) { return v1_score(load, totals, c); });
  return load.id_of_col(col);
}

int reject_candidate_v2(const LoadMatrix& load, std::span<const int> working_set, int bottleneck,
                        double gamma) {
  if (!(gamma > 0.0) || gamma > 1.0) {
    throw ValidationError("gamma must lie in (0, 1]");
  }
  const std::vector<int> cols = to_columns(load, working_set);
  const std::vector<double> totals = port_totals(load, cols);
  const double threshold = gamma * totals[static_cast<size_t>(bottleneck)];
  std::vector<int> candidates;
  for (int col : cols) {
    if (load.ptime_col(bottleneck, col) > 0.0) candidates.push_back(col);
  }
  const int col = argmin_candidate(load, candidates,
                                   [&](int c) { return v2_score(load, totals, c, threshold); });
  return load.id_of_col(col);
}

double eval_cct(const LoadMatrix& load, std::span<const int> prefix) {
  // The estimate for the last coflow is its own processing time plus the
  // predecessors' load, per port; that is exactly the prefix total.
  const std::vector<int> cols = to_columns(load, prefix);
  const std::vector<double> totals = port_totals(load, cols);
  double worst = 0.0;
  for (double t : totals) worst = std::max(worst, t);
  return worst;
}

Schedule remove_late_coflows(const LoadMatrix& load, std::vector<int> sigma,
                             std::span<const int> sigma_star) {
  std::vector<int> star(sigma_star.begin(), sigma_star.end());
  std::vector<int> removed;

  while (!star.empty()) {
    // Pre-rejected coflow appearing first in the current sigma.
    size_t pos = sigma.size();
    for (size_t i = 0; i < sigma.size(); ++i) {
      if (std::find(star.begin(), star.end(), sigma[i]) != star.end()) {
        pos = i;
        break;
      }
    }
    assert(pos < sigma.size());
    const int id = sigma[pos];

    const double estimate = eval_cct(load, std::span<const int>(sigma.data(), pos + 1));
    if (estimate > load.deadline(id)) {
      sigma.erase(sigma.begin() + static_cast<long>(pos));
      removed.push_back(id);
    }
    star.erase(std::find(star.begin(), star.end(), id));
  }

  std::sort(removed.begin(), removed.end());
  return Schedule{std::move(sigma), std::move(removed)};
}

Schedule dcoflow_order(const LoadMatrix& load, const DcoflowConfig& cfg,
                       std::vector<DcoflowRound>* trace) {
  if (cfg.variant == DcoflowVariant::v2 && (!(cfg.gamma > 0.0) || cfg.gamma > 1.0)) {
    throw ValidationError("gamma must lie in (0, 1]");
  }
  if (trace) trace->clear();

  std::vector<int> remaining(static_cast<size_t>(load.num_coflows()));
  for (int c = 0; c < load.num_coflows(); ++c) remaining[static_cast<size_t>(c)] = c;

  std::vector<int> tail_first;  // filled lowest priority first
  std::vector<int> sigma_star;

  while (!remaining.empty()) {
    const std::vector<double> totals = port_totals(load, remaining);
    const int lb = argmax_port(totals);

    std::vector<int> users;
    for (int col : remaining) {
      if (load.ptime_col(lb, col) > 0.0) users.push_back(col);
    }

    std::vector<int> feasible;
    for (int col : users) {
      if (totals[static_cast<size_t>(lb)] <= load.deadline_col(col)) feasible.push_back(col);
    }

    int selected_col = -1;
    bool rejected = false;
    if (users.empty()) {
      // Only zero-load coflows remain; they complete instantly, admit them.
      selected_col = remaining.front();
      for (int col : remaining) {
        if (load.id_of_col(col) < load.id_of_col(selected_col)) selected_col = col;
      }
    } else if (!feasible.empty()) {
      // Admit the feasible coflow with the largest deadline at the tail.
      for (int col : feasible) {
        if (selected_col < 0 || load.deadline_col(col) > load.deadline_col(selected_col) ||
            (load.deadline_col(col) == load.deadline_col(selected_col) &&
             load.id_of_col(col) < load.id_of_col(selected_col))) {
          selected_col = col;
        }
      }
    } else {
      rejected = true;
      const double threshold =
          cfg.variant == DcoflowVariant::v2 ? cfg.gamma * totals[static_cast<size_t>(lb)] : 0.0;
      selected_col = argmin_candidate(load, users, [&](int c) {
        return cfg.variant == DcoflowVariant::v1 ? v1_score(load, totals, c)
                                                 : v2_score(load, totals, c, threshold);
      });
    }

    if (trace) {
      DcoflowRound round;
      round.working_set.reserve(remaining.size());
      for (int col : remaining) round.working_set.push_back(load.id_of_col(col));
      std::sort(round.working_set.begin(), round.working_set.end());
      round.bottleneck_port = lb;
      round.rejected = rejected;
      round.selected = load.id_of_col(selected_col);
      const double threshold =
          cfg.variant == DcoflowVariant::v2 ? cfg.gamma * totals[static_cast<size_t>(lb)] : 0.0;
      std::vector<int> users_by_id = users;
      std::sort(users_by_id.begin(), users_by_id.end(),
                [&](int a, int b) { return load.id_of_col(a) < load.id_of_col(b); });
      for (int col : users_by_id) {
        const double s = cfg.variant == DcoflowVariant::v1 ? v1_score(load, totals, col)
                                                           : v2_score(load, totals, col, threshold);
        round.candidate_scores.emplace_back(load.id_of_col(col), s);
      }
      trace->push_back(std::move(round));
    }

    if (rejected) sigma_star.push_back(load.id_of_col(selected_col));
    tail_first.push_back(load.id_of_col(selected_col));
    remaining.erase(std::find(remaining.begin(), remaining.end(), selected_col));
  }

  std::vector<int> sigma(tail_first.rbegin(), tail_first.rend());
  return remove_late_coflows(load, std::move(sigma), sigma_star);
}

Schedule dcoflow_order(const Fabric& fabric, std::span<const Coflow> coflows,
                       const DcoflowConfig& cfg, std::vector<DcoflowRound>* trace) {
  return dcoflow_order(build_load_matrix(fabric, coflows), cfg, trace);
}

}  // namespace coflowsim
