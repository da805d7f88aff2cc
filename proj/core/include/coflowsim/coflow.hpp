#ifndef COFLOWSIM_COFLOW_HPP
#define COFLOWSIM_COFLOW_HPP

#include <vector>

namespace coflowsim {

/// One shuffle connection over an (ingress, egress) port pair. Volume is in
/// normalized data units; zero-volume flows are legal and complete instantly.
struct Flow {
  int coflow_id = 0;
  int flow_id = 0;
  int ingress_port = 0;
  int egress_port = 0;
  double volume = 0.0;
};

/// A set of flows that is complete only when its last flow finishes.
/// The deadline is absolute; in the offline setting release_time is zero and
/// the deadline coincides with the allowed duration.
struct Coflow {
  int id = 0;
  std::vector<Flow> flows;
  double deadline = 0.0;
  double release_time = 0.0;
};

}  // namespace coflowsim

#endif
