#include "coflowsim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "coflowsim/errors.hpp"
#include "coflowsim/load_matrix.hpp"

namespace coflowsim {

std::vector<double> allocate_rates(const Fabric& fabric, std::span<const ActiveFlow> flows) {
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

  std::vector<double> residual = fabric.capacities();
  std::vector<double> rates(flows.size(), 0.0);
  for (size_t i : order) {
    const ActiveFlow& f = flows[i];
    const double rate = std::max(
        0.0, std::min(residual[static_cast<size_t>(f.ingress_port)],
                      residual[static_cast<size_t>(f.egress_port)]));
    rates[i] = rate;
    residual[static_cast<size_t>(f.ingress_port)] -= rate;
    residual[static_cast<size_t>(f.egress_port)] -= rate;
  }
  return rates;
}

const CoflowOutcome& SimResult::outcome(int coflow_id) const {
  for (const CoflowOutcome& o : coflows) {
    if (o.id == coflow_id) return o;
  }
  throw StructuralError("no outcome for coflow " + std::to_string(coflow_id));
}

FlowSimulator::FlowSimulator(Fabric fabric) : fabric_(std::move(fabric)) {}

void FlowSimulator::add_coflow(const Coflow& coflow) {
  validate_coflow(fabric_, coflow);
  if (coflows_.count(coflow.id)) {
    throw ValidationError("coflow " + std::to_string(coflow.id) + " already registered");
  }
  CoflowRec rec;
  rec.original = coflow;
  for (const Flow& f : coflow.flows) {
    FlowRec fr;
    fr.flow = f;
    fr.remaining = f.volume;
    if (fr.remaining <= kVolumeTolerance) {
      fr.remaining = 0.0;
      fr.completion = coflow.release_time;  // nothing to send
    }
    rec.flow_idx.push_back(flows_.size());
    flows_.push_back(std::move(fr));
  }
  coflows_.emplace(coflow.id, std::move(rec));
  settle_coflow(coflow.id);
}

void FlowSimulator::apply_schedule(const Schedule& schedule) {
  for (auto& [id, rec] : coflows_) rec.rank = -1;
  for (size_t r = 0; r < schedule.sigma.size(); ++r) {
    auto it = coflows_.find(schedule.sigma[r]);
    if (it == coflows_.end()) {
      throw StructuralError("schedule names unregistered coflow " +
                            std::to_string(schedule.sigma[r]));
    }
    it->second.rank = static_cast<int>(r);
  }
}

void FlowSimulator::settle_coflow(int coflow_id) {
  CoflowRec& rec = coflows_.at(coflow_id);
  if (rec.completion) return;
  double last = rec.original.release_time;
  for (size_t idx : rec.flow_idx) {
    if (!flows_[idx].completion) return;
    last = std::max(last, *flows_[idx].completion);
  }
  rec.completion = last;
}

bool FlowSimulator::work_remaining() const {
  for (const auto& [id, rec] : coflows_) {
    if (rec.rank < 0) continue;
    for (size_t idx : rec.flow_idx) {
      if (flows_[idx].remaining > kVolumeTolerance) return true;
    }
  }
  return false;
}

void FlowSimulator::advance_until(double until) {
  const bool unbounded = std::isinf(until);

  while (now_ < until) {
    // Prioritized, released, unfinished flows transmit this epoch.
    std::vector<size_t> active_idx;
    std::vector<ActiveFlow> active;
    double next_release = std::numeric_limits<double>::infinity();
    for (const auto& [id, rec] : coflows_) {
      if (rec.rank < 0) continue;
      if (rec.original.release_time > now_) {
        bool unfinished = false;
        for (size_t idx : rec.flow_idx) {
          if (flows_[idx].remaining > kVolumeTolerance) unfinished = true;
        }
        if (unfinished) next_release = std::min(next_release, rec.original.release_time);
        continue;
      }
      for (size_t idx : rec.flow_idx) {
        const FlowRec& fr = flows_[idx];
        if (fr.remaining > kVolumeTolerance) {
          active_idx.push_back(idx);
          active.push_back(ActiveFlow{fr.flow.coflow_id, fr.flow.flow_id, fr.flow.ingress_port,
                                      fr.flow.egress_port, fr.remaining, rec.rank});
        }
      }
    }

    if (active.empty()) {
      if (next_release < until) {
        now_ = next_release;
        continue;
      }
      if (!unbounded) now_ = until;
      return;
    }

    const std::vector<double> rates = allocate_rates(fabric_, active);
    if (observer_) observer_(now_, active, rates);

    double dt = until - now_;
    dt = std::min(dt, next_release - now_);
    bool any_rate = false;
    for (size_t i = 0; i < active.size(); ++i) {
      if (rates[i] > 0.0) {
        any_rate = true;
        dt = std::min(dt, active[i].remaining / rates[i]);
      }
    }
    if (!any_rate) {
      // Unreachable under work conservation: the highest-priority active flow
      // always sees full residual capacity.
      throw std::logic_error("rate allocation starved every active flow");
    }

    now_ += dt;
    for (size_t i = 0; i < active.size(); ++i) {
      FlowRec& fr = flows_[active_idx[i]];
      fr.remaining = std::max(0.0, fr.remaining - rates[i] * dt);
      if (fr.remaining <= kVolumeTolerance && !fr.completion) {
        fr.remaining = 0.0;
        fr.completion = now_;
        settle_coflow(fr.flow.coflow_id);
      }
    }
  }
}

void FlowSimulator::run_to_completion() {
  advance_until(std::numeric_limits<double>::infinity());
}

std::vector<Coflow> FlowSimulator::remaining_snapshot() const {
  std::vector<Coflow> out;
  for (const auto& [id, rec] : coflows_) {
    if (rec.completion) continue;
    Coflow c;
    c.id = rec.original.id;
    c.deadline = rec.original.deadline;
    c.release_time = rec.original.release_time;
    for (size_t idx : rec.flow_idx) {
      Flow f = flows_[idx].flow;
      f.volume = flows_[idx].remaining;
      c.flows.push_back(f);
    }
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const Coflow& a, const Coflow& b) { return a.id < b.id; });
  return out;
}

std::optional<double> FlowSimulator::completion_time(int coflow_id) const {
  return coflows_.at(coflow_id).completion;
}

double FlowSimulator::remaining_volume(int coflow_id) const {
  const CoflowRec& rec = coflows_.at(coflow_id);
  double sum = 0.0;
  for (size_t idx : rec.flow_idx) sum += flows_[idx].remaining;
  return sum;
}

bool FlowSimulator::finished(int coflow_id) const {
  return coflows_.at(coflow_id).completion.has_value();
}

SimResult simulate(const Fabric& fabric, const Schedule& schedule, std::span<const Coflow> coflows,
                   const EpochObserver& observer) {
  FlowSimulator sim(fabric);
  if (observer) sim.set_epoch_observer(observer);
  for (const Coflow& c : coflows) sim.add_coflow(c);
  sim.apply_schedule(schedule);
  sim.run_to_completion();

  SimResult result;
  result.horizon = sim.now();
  for (const Coflow& c : coflows) {
    CoflowOutcome o;
    o.id = c.id;
    o.accepted = schedule.accepts(c.id);
    o.deadline = c.deadline;
    o.completion = sim.completion_time(c.id);
    o.on_time = o.accepted && o.completion && *o.completion <= c.deadline + kDeadlineTolerance;
    result.coflows.push_back(o);
  }
  return result;
}

double car(const SimResult& result, int total_coflows) {
  if (total_coflows <= 0) {
    throw ValidationError("acceptance rate undefined for an empty coflow set");
  }
  int on_time = 0;
  for (const CoflowOutcome& o : result.coflows) {
    if (o.on_time) ++on_time;
  }
  return static_cast<double>(on_time) / static_cast<double>(total_coflows);
}

double prediction_error(const Schedule& schedule, const SimResult& result) {
  if (schedule.sigma.empty()) {
    throw ValidationError("prediction error undefined for an empty order");
  }
  int kept = 0;
  for (int id : schedule.sigma) {
    if (result.outcome(id).on_time) ++kept;
  }
  const double total = static_cast<double>(schedule.sigma.size());
  return (total - static_cast<double>(kept)) / total;
}

}  // namespace coflowsim
