#include "coflowsim/fabric.hpp"

#include <string>

#include "coflowsim/errors.hpp"

namespace coflowsim {

Fabric::Fabric(int num_machines, std::vector<double> port_capacities)
    : num_machines_(num_machines), capacity_(std::move(port_capacities)) {
  if (num_machines_ < 1) {
    throw ValidationError("fabric needs at least one machine");
  }
  if (capacity_.size() != static_cast<size_t>(2 * num_machines_)) {
    throw ValidationError("fabric with M machines needs exactly 2M port capacities, got " +
                          std::to_string(capacity_.size()));
  }
  for (size_t i = 0; i < capacity_.size(); ++i) {
    if (!(capacity_[i] > 0.0)) {
      throw ValidationError("port " + std::to_string(i) + " has non-positive capacity");
    }
  }
}

Fabric Fabric::uniform(int num_machines, double capacity) {
  return Fabric(num_machines, std::vector<double>(static_cast<size_t>(2 * num_machines), capacity));
}

}  // namespace coflowsim
