#ifndef COFLOWSIM_SIMULATOR_HPP
#define COFLOWSIM_SIMULATOR_HPP

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "coflowsim/coflow.hpp"
#include "coflowsim/fabric.hpp"
#include "coflowsim/schedule.hpp"

namespace coflowsim {

/// Volume below which a flow counts as finished; guards against
/// representation error spinning the event loop.
inline constexpr double kVolumeTolerance = 1e-9;
/// Closed deadline check: on time iff completion <= deadline + tolerance.
inline constexpr double kDeadlineTolerance = 1e-9;

/// A transmitting flow at an allocation epoch. priority_rank orders flows the
/// way the allocator visits them (coflow sigma rank, then remaining volume
/// descending, then flow id).
struct ActiveFlow {
  int coflow_id = 0;
  int flow_id = 0;
  int ingress_port = 0;
  int egress_port = 0;
  double remaining = 0.0;
  int coflow_rank = 0;
};

/// Greedy priority allocation: walk the flows in priority order, give each
/// the min of its ports' residual capacities, decrement the residuals.
/// Work-conserving; a flow gets zero only when a strictly earlier flow
/// exhausted one of its ports. Returns one rate per input flow.
std::vector<double> allocate_rates(const Fabric& fabric, std::span<const ActiveFlow> flows);

/// Simulation outcome of one coflow.
struct CoflowOutcome {
  int id = 0;
  bool accepted = false;
  double deadline = 0.0;
  std::optional<double> completion;
  bool on_time = false;
};

struct SimResult {
  std::vector<CoflowOutcome> coflows;
  double horizon = 0.0;

  const CoflowOutcome& outcome(int coflow_id) const;
};

/// Epoch inspection hook for property tests: called with the epoch start
/// time, the active flows and the rate assigned to each.
using EpochObserver =
    std::function<void(double time, std::span<const ActiveFlow> flows, std::span<const double> rates)>;

/// Deterministic event-driven fluid simulator over a Big-Switch fabric under
/// a fixed coflow priority order. Coflows can be registered over time and
/// re-prioritized between advances (preemption); rejected coflows do not
/// transmit.
class FlowSimulator {
 public:
  explicit FlowSimulator(Fabric fabric);

  double now() const { return now_; }
  const Fabric& fabric() const { return fabric_; }

  /// Registers a coflow (deadline absolute, release <= coming advances).
  void add_coflow(const Coflow& coflow);

  /// Replaces the priority assignment: coflows in sigma transmit in that
  /// order, every other registered coflow is parked. Remaining volumes are
  /// untouched.
  void apply_schedule(const Schedule& schedule);

  /// Runs the fluid dynamics up to `until`.
  void advance_until(double until);

  /// Runs until every prioritized coflow has finished.
  void run_to_completion();

  bool work_remaining() const;

  /// Unfinished registered coflows with their residual volumes. Deadlines and
  /// release times are left untouched (absolute).
  std::vector<Coflow> remaining_snapshot() const;

  std::optional<double> completion_time(int coflow_id) const;
  double remaining_volume(int coflow_id) const;
  bool finished(int coflow_id) const;

  void set_epoch_observer(EpochObserver observer) { observer_ = std::move(observer); }

 private:
  struct FlowRec {
    Flow flow;
    double remaining = 0.0;
    std::optional<double> completion;
  };
  struct CoflowRec {
    Coflow original;
    std::vector<size_t> flow_idx;
    int rank = -1;  // -1 = parked
    std::optional<double> completion;
  };

  void settle_coflow(int coflow_id);

  Fabric fabric_;
  double now_ = 0.0;
  std::vector<FlowRec> flows_;
  std::unordered_map<int, CoflowRec> coflows_;
  EpochObserver observer_;
};

/// Offline entry point: everything released at its release time (zero in the
/// offline setting), rates per the schedule, run to completion.
SimResult simulate(const Fabric& fabric, const Schedule& schedule, std::span<const Coflow> coflows,
                   const EpochObserver& observer = nullptr);

/// Fraction of all offered coflows that were accepted and met the deadline.
/// Throws ValidationError when total is zero.
double car(const SimResult& result, int total_coflows);

/// Fraction of the accepted order that missed the deadline under the actual
/// rate allocation. Throws ValidationError when the order is empty.
double prediction_error(const Schedule& schedule, const SimResult& result);

}  // namespace coflowsim

#endif
