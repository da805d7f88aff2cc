#ifndef COFLOWSIM_LOAD_MATRIX_HPP
#define COFLOWSIM_LOAD_MATRIX_HPP

#include <span>
#include <unordered_map>
#include <vector>

#include "coflowsim/coflow.hpp"
#include "coflowsim/fabric.hpp"

namespace coflowsim {

/// Per-(port, coflow) aggregate volumes and processing times, plus the
/// per-coflow deadlines the schedulers work against. A coflow's volume on a
/// port sums every flow of the coflow that touches the port as ingress or
/// egress; the processing time is that volume divided by the port capacity.
class LoadMatrix {
 public:
  LoadMatrix(int num_ports, std::vector<int> coflow_ids, std::vector<double> deadlines,
             std::vector<double> volumes, std::vector<double> processing_times);

  int num_ports() const { return num_ports_; }
  int num_coflows() const { return static_cast<int>(ids_.size()); }
  const std::vector<int>& coflow_ids() const { return ids_; }

  /// Column index of a coflow id; throws StructuralError for unknown ids.
  int column_of(int coflow_id) const;

  double volume(int port, int coflow_id) const { return volume_col(port, column_of(coflow_id)); }
  double processing_time(int port, int coflow_id) const {
    return ptime_col(port, column_of(coflow_id));
  }
  double deadline(int coflow_id) const { return deadline_[static_cast<size_t>(column_of(coflow_id))]; }

  double volume_col(int port, int col) const {
    return volume_[static_cast<size_t>(port) * ids_.size() + static_cast<size_t>(col)];
  }
  double ptime_col(int port, int col) const {
    return ptime_[static_cast<size_t>(port) * ids_.size() + static_cast<size_t>(col)];
  }
  double deadline_col(int col) const { return deadline_[static_cast<size_t>(col)]; }
  int id_of_col(int col) const { return ids_[static_cast<size_t>(col)]; }

  /// max over ports of the coflow's processing time.
  double isolation_cct_col(int col) const;

 private:
  int num_ports_;
  std::vector<int> ids_;
  std::unordered_map<int, int> col_of_;
  std::vector<double> deadline_;
  std::vector<double> volume_;  // port-major, num_ports x num_coflows
  std::vector<double> ptime_;
};

/// Checks flows against the fabric: ports must exist with the right
/// direction (StructuralError), volumes must be non-negative, the flow list
/// non-empty and the release non-negative (ValidationError). Does not look
/// at the deadline, so imported coflows can be checked before deadlines are
/// assigned.
void validate_flows(const Fabric& fabric, const Coflow& coflow);

/// validate_flows plus a positive deadline, required wherever scheduling
/// semantics apply.
void validate_coflow(const Fabric& fabric, const Coflow& coflow);

/// Builds the |L| x N load matrix. Flow order inside a coflow does not affect
/// the result, bit for bit.
LoadMatrix build_load_matrix(const Fabric& fabric, std::span<const Coflow> coflows);

/// Completion time of a coflow alone in the fabric: max over ports of its
/// processing time.
double isolation_cct(const Fabric& fabric, const Coflow& coflow);

}  // namespace coflowsim

#endif
