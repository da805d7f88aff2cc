#ifndef COFLOWSIM_ONLINE_HPP
#define COFLOWSIM_ONLINE_HPP

#include <limits>
#include <span>
#include <vector>

#include "coflowsim/scheduler.hpp"
#include "coflowsim/simulator.hpp"

namespace coflowsim {

enum class UpdateMode {
  per_arrival,  // recompute priorities at every arrival instant
  periodic,     // recompute on a fixed time grid anchored at t = 0
};

struct OnlineConfig {
  UpdateMode mode = UpdateMode::per_arrival;
  double period = 0.0;  // required > 0 in periodic mode
  SchedulerKind scheduler = SchedulerKind::DcoflowV1;
  DcoflowConfig dcoflow_cfg;
  double horizon = std::numeric_limits<double>::infinity();
};

/// One scheduling update, for inspection: who was offered, who got in.
struct OnlineUpdate {
  double time = 0.0;
  std::vector<int> candidates;  // ids offered to the scheduler, ascending
  std::vector<int> accepted;    // sigma, priority order
  std::vector<int> rejected;    // ascending
};
using OnlineLog = std::vector<OnlineUpdate>;

/// Online joint admission and scheduling over an arrival stream (sorted by
/// release time, absolute deadlines). At each update instant the scheduler
/// sees the unfinished, unexpired coflows - in-flight, previously rejected,
/// and newly arrived - with their remaining volumes and residual deadline
/// budgets; in between, transmission follows the last computed order.
/// Preemption is allowed: an update may demote or reject an in-flight
/// coflow, which then idles until re-admitted. The result covers every
/// arrival.
SimResult run_online(const Fabric& fabric, std::span<const Coflow> arrivals,
                     const OnlineConfig& cfg, OnlineLog* log = nullptr);

}  // namespace coflowsim

#endif
