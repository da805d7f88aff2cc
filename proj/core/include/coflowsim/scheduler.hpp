#ifndef COFLOWSIM_SCHEDULER_HPP
#define COFLOWSIM_SCHEDULER_HPP

#include <span>
#include <string>

#include "coflowsim/coflow.hpp"
#include "coflowsim/dcoflow.hpp"
#include "coflowsim/fabric.hpp"
#include "coflowsim/schedule.hpp"

namespace coflowsim {

enum class SchedulerKind { DcoflowV1, DcoflowV2, CsMha, Sincronia, Edd };

/// CLI names: dcoflow-v1, dcoflow-v2, cs-mha, sincronia, edd.
SchedulerKind parse_scheduler(const std::string& name);
std::string scheduler_name(SchedulerKind kind);
std::span<const SchedulerKind> all_schedulers();

/// Runs the named admission/ordering pass on an offline batch or snapshot.
Schedule run_scheduler(SchedulerKind kind, const Fabric& fabric, std::span<const Coflow> coflows,
                       const DcoflowConfig& dcoflow_cfg = {});

}  // namespace coflowsim

#endif
