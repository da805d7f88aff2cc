#ifndef COFLOWSIM_BASELINES_HPP
#define COFLOWSIM_BASELINES_HPP

#include <span>
#include <vector>

#include "coflowsim/load_matrix.hpp"
#include "coflowsim/schedule.hpp"

namespace coflowsim {

/// A coflow's footprint on one port, viewed as a single-machine job.
struct PortJob {
  int coflow_id = 0;
  double processing_time = 0.0;
  double due_date = 0.0;
};

struct MooreHodgsonResult {
  std::vector<int> accepted;  // on-time jobs in EDD order
  std::vector<int> rejected;  // ascending
};

/// Single-port minimization of late jobs: EDD scan with largest-job ejection
/// on each deadline violation. Optimal in the number of on-time jobs.
MooreHodgsonResult moore_hodgson(std::vector<PortJob> jobs);

/// Per-port Moore-Hodgson admission: a coflow is kept only if every port it
/// uses keeps it, followed by a rescue pass that re-admits rejected coflows
/// (ordered by the bandwidth they would need at the bottleneck port) whenever
/// scheduling them last meets their deadline at every port they use. Accepted
/// coflows are ordered by earliest due date.
Schedule cs_mha_order(const LoadMatrix& load);
Schedule cs_mha_order(const Fabric& fabric, std::span<const Coflow> coflows);

/// Bottleneck-select-scale-iterate ordering for completion-time-oriented
/// scheduling. Accepts everything; deadline misses only show up in
/// simulation.
Schedule sincronia_order(const LoadMatrix& load);
Schedule sincronia_order(const Fabric& fabric, std::span<const Coflow> coflows);

/// Earliest due date, accept all. Diagnostic baseline.
Schedule edd_order(std::span<const Coflow> coflows);

}  // namespace coflowsim

#endif
