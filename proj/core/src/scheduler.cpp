#include "coflowsim/scheduler.hpp"

#include <array>

#include "coflowsim/baselines.hpp"
#include "coflowsim/errors.hpp"

namespace coflowsim {

namespace {
constexpr std::array<SchedulerKind, 5> kAll = {SchedulerKind::DcoflowV1, SchedulerKind::DcoflowV2,
                                               SchedulerKind::CsMha, SchedulerKind::Sincronia,
                                               SchedulerKind::Edd};
}

SchedulerKind parse_scheduler(const std::string& name) {
  if (name == "dcoflow-v1") return SchedulerKind::DcoflowV1;
  if (name == "dcoflow-v2") return SchedulerKind::DcoflowV2;
  if (name == "cs-mha") return SchedulerKind::CsMha;
  if (name == "sincronia") return SchedulerKind::Sincronia;
  if (name == "edd") return SchedulerKind::Edd;
  throw ValidationError("unknown scheduler '" + name +
                        "' (expected dcoflow-v1, dcoflow-v2, cs-mha, sincronia or edd)");
}

std::string scheduler_name(SchedulerKind kind) {
  switch (kind) {
    case SchedulerKind::DcoflowV1: return "dcoflow-v1";
    case SchedulerKind::DcoflowV2: return "dcoflow-v2";
    case SchedulerKind::CsMha: return "cs-mha";
    case SchedulerKind::Sincronia: return "sincronia";
    case SchedulerKind::Edd: return "edd";
  }
  return "unknown";
}

std::span<const SchedulerKind> all_schedulers() { return kAll; }

Schedule run_scheduler(SchedulerKind kind, const Fabric& fabric, std::span<const Coflow> coflows,
                       const DcoflowConfig& dcoflow_cfg) {
  switch (kind) {
    case SchedulerKind::DcoflowV1: {
      DcoflowConfig cfg = dcoflow_cfg;
      cfg.variant = DcoflowVariant::v1;
      return dcoflow_order(fabric, coflows, cfg);
    }
    case SchedulerKind::DcoflowV2: {
      DcoflowConfig cfg = dcoflow_cfg;
      cfg.variant = DcoflowVariant::v2;
      return dcoflow_order(fabric, coflows, cfg);
    }
    case SchedulerKind::CsMha:
      return cs_mha_order(fabric, coflows);
    case SchedulerKind::Sincronia:
      return sincronia_order(fabric, coflows);
    case SchedulerKind::Edd:
      return edd_order(coflows);
  }
  throw ValidationError("unhandled scheduler kind");
}

}  // namespace coflowsim
