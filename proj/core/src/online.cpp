#include "coflowsim/online.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "coflowsim/errors.hpp"

namespace coflowsim {

namespace {

// Candidates for a scheduling update: unfinished coflows whose deadline lies
// ahead, rebased so the scheduler sees release 0 and the residual budget as
// the deadline. Expired coflows are dropped for good - they cannot finish on
// time and every admission rule would rank them hopeless.
std::vector<Coflow> update_candidates(const FlowSimulator& sim, double now) {
  std::vector<Coflow> candidates;
  for (Coflow& c : sim.remaining_snapshot()) {
    if (c.deadline <= now) continue;
    c.deadline -= now;
    c.release_time = 0.0;
    candidates.push_back(std::move(c));
  }
  return candidates;
}

}  // namespace

SimResult run_online(const Fabric& fabric, std::span<const Coflow> arrivals,
                     const OnlineConfig& cfg, OnlineLog* log) {
  if (cfg.mode == UpdateMode::periodic && !(cfg.period > 0.0)) {
    throw ValidationError("periodic updates need a positive period");
  }
  for (size_t i = 1; i < arrivals.size(); ++i) {
    if (arrivals[i].release_time < arrivals[i - 1].release_time) {
      throw ValidationError("arrival stream must be sorted by release time");
    }
  }
  if (log) log->clear();

  FlowSimulator sim(fabric);
  std::unordered_set<int> ever_accepted;
  size_t next_arrival = 0;
  double next_tick = 0.0;

  auto run_update = [&](double now) {
    const std::vector<Coflow> candidates = update_candidates(sim, now);
    Schedule schedule;
    if (!candidates.empty()) {
      schedule = run_scheduler(cfg.scheduler, fabric, candidates, cfg.dcoflow_cfg);
    }
    sim.apply_schedule(schedule);
    for (int id : schedule.sigma) ever_accepted.insert(id);
    if (log) {
      OnlineUpdate entry;
      entry.time = now;
      for (const Coflow& c : candidates) entry.candidates.push_back(c.id);
      entry.accepted = schedule.sigma;
      entry.rejected = schedule.rejected;
      log->push_back(std::move(entry));
    }
  };

  while (sim.now() < cfg.horizon) {
    const bool arrivals_pending = next_arrival < arrivals.size();
    double t_next = std::numeric_limits<double>::infinity();
    bool tick_due = false;

    if (arrivals_pending) t_next = arrivals[next_arrival].release_time;
    if (cfg.mode == UpdateMode::periodic) {
      // Ticks matter while anything could still change: pending arrivals or
      // unfinished, unexpired coflows waiting for a slot.
      const bool candidates_left = !update_candidates(sim, sim.now()).empty();
      if (arrivals_pending || candidates_left) {
        if (next_tick <= t_next) {
          tick_due = true;
          t_next = std::min(t_next, next_tick);
        }
      }
    }

    if (std::isinf(t_next)) break;
    const double target = std::min(t_next, cfg.horizon);
    sim.advance_until(target);
    if (target < t_next) break;  // horizon hit

    bool arrived = false;
    while (next_arrival < arrivals.size() &&
           arrivals[next_arrival].release_time <= sim.now()) {
      sim.add_coflow(arrivals[next_arrival]);
      ++next_arrival;
      arrived = true;
    }

    if (cfg.mode == UpdateMode::per_arrival) {
      if (arrived) run_update(sim.now());
    } else {
      if (tick_due && next_tick <= sim.now()) {
        run_update(sim.now());
        while (next_tick <= sim.now()) next_tick += cfg.period;
      }
    }
  }

  if (std::isfinite(cfg.horizon)) {
    sim.advance_until(cfg.horizon);
  } else {
    sim.run_to_completion();
  }

  SimResult result;
  result.horizon = sim.now();
  for (const Coflow& c : arrivals) {
    CoflowOutcome o;
    o.id = c.id;
    o.accepted = ever_accepted.count(c.id) > 0;
    o.deadline = c.deadline;
    o.completion = sim.completion_time(c.id);
    o.on_time = o.completion && *o.completion <= c.deadline + kDeadlineTolerance;
    result.coflows.push_back(o);
  }
  return result;
}

}  // namespace coflowsim
