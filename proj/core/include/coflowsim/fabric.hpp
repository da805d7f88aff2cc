#ifndef COFLOWSIM_FABRIC_HPP
#define COFLOWSIM_FABRIC_HPP

#include <vector>

namespace coflowsim {

/// Big-Switch fabric: M machines behind a non-blocking switch. Contention
/// happens only at the 2M access ports. Port ids are fixed: the ingress port
/// of machine m is m, its egress port is M + m.
class Fabric {
 public:
  /// Builds a fabric with explicit per-port capacities (size must be 2M,
  /// ingress ports first). Throws ValidationError on non-positive capacity.
  Fabric(int num_machines, std::vector<double> port_capacities);

  /// All ports share the same capacity (the usual normalized setting).
  static Fabric uniform(int num_machines, double capacity = 1.0);

  int num_machines() const { return num_machines_; }
  int num_ports() const { return static_cast<int>(capacity_.size()); }

  int ingress_port(int machine) const { return machine; }
  int egress_port(int machine) const { return num_machines_ + machine; }
  bool is_ingress(int port) const { return port < num_machines_; }
  bool is_egress(int port) const { return port >= num_machines_ && port < num_ports(); }
  bool has_port(int port) const { return port >= 0 && port < num_ports(); }
  int machine_of(int port) const { return is_ingress(port) ? port : port - num_machines_; }

  double capacity(int port) const { return capacity_[static_cast<size_t>(port)]; }
  const std::vector<double>& capacities() const { return capacity_; }

 private:
  int num_machines_;
  std::vector<double> capacity_;
};

}  // namespace coflowsim

#endif
