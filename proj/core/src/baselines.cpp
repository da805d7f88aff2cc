#include "coflowsim/baselines.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <tuple>
#include <utility>

namespace coflowsim {

MooreHodgsonResult moore_hodgson(std::vector<PortJob> jobs) {
  std::stable_sort(jobs.begin(), jobs.end(), [](const PortJob& a, const PortJob& b) {
    return std::tie(a.due_date, a.coflow_id) < std::tie(b.due_date, b.coflow_id);
  });

  // Max-heap of scheduled jobs keyed by processing time (ties: higher id out).
  std::priority_queue<std::pair<double, int>> scheduled;
  std::vector<int> rejected;
  double elapsed = 0.0;

  for (const PortJob& job : jobs) {
    scheduled.emplace(job.processing_time, job.coflow_id);
    elapsed += job.processing_time;
    if (elapsed > job.due_date) {
      auto [p, id] = scheduled.top();
      scheduled.pop();
      elapsed -= p;
      rejected.push_back(id);
    }
  }

  std::sort(rejected.begin(), rejected.end());
  std::vector<int> accepted;
  accepted.reserve(jobs.size() - rejected.size());
  for (const PortJob& job : jobs) {
    if (!std::binary_search(rejected.begin(), rejected.end(), job.coflow_id)) {
      accepted.push_back(job.coflow_id);
    }
  }
  return MooreHodgsonResult{std::move(accepted), std::move(rejected)};
}

Schedule cs_mha_order(const LoadMatrix& load) {
  const int n = load.num_coflows();
  const int ports = load.num_ports();

  std::vector<bool> accepted(static_cast<size_t>(n), true);
  for (int port = 0; port < ports; ++port) {
    std::vector<PortJob> jobs;
    for (int col = 0; col < n; ++col) {
      const double p = load.ptime_col(port, col);
      if (p > 0.0) {
        jobs.push_back(PortJob{load.id_of_col(col), p, load.deadline_col(col)});
      }
    }
    if (jobs.empty()) continue;
    const MooreHodgsonResult res = moore_hodgson(std::move(jobs));
    for (int id : res.rejected) accepted[static_cast<size_t>(load.column_of(id))] = false;
  }

  std::vector<double> port_load(static_cast<size_t>(ports), 0.0);
  for (int port = 0; port < ports; ++port) {
    for (int col = 0; col < n; ++col) {
      if (accepted[static_cast<size_t>(col)]) port_load[static_cast<size_t>(port)] += load.ptime_col(port, col);
    }
  }

  // Rescue pass: rejected coflows ordered by the bandwidth they would need at
  // the bottleneck port, cheapest first; each is re-admitted when scheduling
  // it last meets its deadline on every port it uses.
  int bottleneck = 0;
  for (int port = 1; port < ports; ++port) {
    if (port_load[static_cast<size_t>(port)] > port_load[static_cast<size_t>(bottleneck)]) bottleneck = port;
  }

  std::vector<int> rescue_cols;
  for (int col = 0; col < n; ++col) {
    if (!accepted[static_cast<size_t>(col)]) rescue_cols.push_back(col);
  }
  auto rescue_key = [&](int col) {
    const double slack = load.deadline_col(col) - port_load[static_cast<size_t>(bottleneck)];
    if (slack <= 0.0) return std::numeric_limits<double>::infinity();
    return load.volume_col(bottleneck, col) / slack;
  };
  std::sort(rescue_cols.begin(), rescue_cols.end(), [&](int a, int b) {
    return std::make_pair(rescue_key(a), load.id_of_col(a)) <
           std::make_pair(rescue_key(b), load.id_of_col(b));
  });

  for (int col : rescue_cols) {
    bool fits = true;
    for (int port = 0; port < ports && fits; ++port) {
      const double p = load.ptime_col(port, col);
      if (p > 0.0 && port_load[static_cast<size_t>(port)] + p > load.deadline_col(col)) fits = false;
    }
    if (fits) {
      accepted[static_cast<size_t>(col)] = true;
      for (int port = 0; port < ports; ++port) {
        port_load[static_cast<size_t>(port)] += load.ptime_col(port, col);
      }
    }
  }

  Schedule out;
  for (int col = 0; col < n; ++col) {
    if (accepted[static_cast<size_t>(col)]) {
      out.sigma.push_back(load.id_of_col(col));
    } else {
      out.rejected.push_back(load.id_of_col(col));
    }
  }
  std::sort(out.sigma.begin(), out.sigma.end(), [&](int a, int b) {
    return std::make_pair(load.deadline(a), a) < std::make_pair(load.deadline(b), b);
  });
  std::sort(out.rejected.begin(), out.rejected.end());
  return out;
}

Schedule cs_mha_order(const Fabric& fabric, std::span<const Coflow> coflows) {
  return cs_mha_order(build_load_matrix(fabric, coflows));
}

Schedule sincronia_order(const LoadMatrix& load) {
  const int n = load.num_coflows();
  const int ports = load.num_ports();

  std::vector<int> remaining(static_cast<size_t>(n));
  for (int c = 0; c < n; ++c) remaining[static_cast<size_t>(c)] = c;
  std::vector<double> weight(static_cast<size_t>(n), 1.0);

  std::vector<int> tail_first;
  while (!remaining.empty()) {
    std::vector<double> totals(static_cast<size_t>(ports), 0.0);
    for (int port = 0; port < ports; ++port) {
      for (int col : remaining) totals[static_cast<size_t>(port)] += load.ptime_col(port, col);
    }
    int bottleneck = 0;
    for (int port = 1; port < ports; ++port) {
      if (totals[static_cast<size_t>(port)] > totals[static_cast<size_t>(bottleneck)]) bottleneck = port;
    }

    int picked = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int col : remaining) {
      const double p = load.ptime_col(bottleneck, col);
      if (p <= 0.0) continue;
      const double ratio = weight[static_cast<size_t>(col)] / p;
      if (picked < 0 || ratio < best_ratio ||
          (ratio == best_ratio && load.id_of_col(col) < load.id_of_col(picked))) {
        picked = col;
        best_ratio = ratio;
      }
    }
    if (picked < 0) {
      // Nothing loads the bottleneck: only zero-load coflows remain.
      picked = remaining.front();
      for (int col : remaining) {
        if (load.id_of_col(col) < load.id_of_col(picked)) picked = col;
      }
    } else {
      const double theta = weight[static_cast<size_t>(picked)] / load.ptime_col(bottleneck, picked);
      for (int col : remaining) {
        if (col != picked && load.ptime_col(bottleneck, col) > 0.0) {
          weight[static_cast<size_t>(col)] -= theta * load.ptime_col(bottleneck, col);
        }
      }
    }

    tail_first.push_back(load.id_of_col(picked));
    remaining.erase(std::find(remaining.begin(), remaining.end(), picked));
  }

  Schedule out;
  out.sigma.assign(tail_first.rbegin(), tail_first.rend());
  return out;
}

Schedule sincronia_order(const Fabric& fabric, std::span<const Coflow> coflows) {
  return sincronia_order(build_load_matrix(fabric, coflows));
}

Schedule edd_order(std::span<const Coflow> coflows) {
  Schedule out;
  out.sigma.reserve(coflows.size());
  std::vector<const Coflow*> sorted;
  sorted.reserve(coflows.size());
  for (const Coflow& c : coflows) sorted.push_back(&c);
  std::sort(sorted.begin(), sorted.end(), [](const Coflow* a, const Coflow* b) {
    return std::tie(a->deadline, a->id) < std::tie(b->deadline, b->id);
  });
  for (const Coflow* c : sorted) out.sigma.push_back(c->id);
  return out;
}

}  // namespace coflowsim
