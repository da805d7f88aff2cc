#include "coflowsim/load_matrix.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "coflowsim/errors.hpp"

namespace coflowsim {

LoadMatrix::LoadMatrix(int num_ports, std::vector<int> coflow_ids, std::vector<double> deadlines,
                       std::vector<double> volumes, std::vector<double> processing_times)
    : num_ports_(num_ports),
      ids_(std::move(coflow_ids)),
      deadline_(std::move(deadlines)),
      volume_(std::move(volumes)),
      ptime_(std::move(processing_times)) {
  col_of_.reserve(ids_.size());
  for (size_t c = 0; c < ids_.size(); ++c) {
    if (!col_of_.emplace(ids_[c], static_cast<int>(c)).second) {
      throw ValidationError("duplicate coflow id " + std::to_string(ids_[c]));
    }
  }
}

int LoadMatrix::column_of(int coflow_id) const {
  auto it = col_of_.find(coflow_id);
  if (it == col_of_.end()) {
    throw StructuralError("unknown coflow id " + std::to_string(coflow_id));
  }
  return it->second;
}

double LoadMatrix::isolation_cct_col(int col) const {
  double worst = 0.0;
  for (int port = 0; port < num_ports_; ++port) {
    worst = std::max(worst, ptime_col(port, col));
  }
  return worst;
}

void validate_flows(const Fabric& fabric, const Coflow& coflow) {
  if (coflow.flows.empty()) {
    throw ValidationError("coflow " + std::to_string(coflow.id) + " has no flows");
  }
  if (coflow.release_time < 0.0) {
    throw ValidationError("coflow " + std::to_string(coflow.id) + " has negative release time");
  }
  for (const Flow& f : coflow.flows) {
    if (!fabric.has_port(f.ingress_port) || !fabric.has_port(f.egress_port)) {
      throw StructuralError("coflow " + std::to_string(coflow.id) + " flow " +
                            std::to_string(f.flow_id) + " references a port outside the fabric");
    }
    if (!fabric.is_ingress(f.ingress_port)) {
      throw StructuralError("coflow " + std::to_string(coflow.id) + " flow " +
                            std::to_string(f.flow_id) + " ingress field holds an egress port");
    }
    if (!fabric.is_egress(f.egress_port)) {
      throw StructuralError("coflow " + std::to_string(coflow.id) + " flow " +
                            std::to_string(f.flow_id) + " egress field holds an ingress port");
    }
    if (f.volume < 0.0) {
      throw ValidationError("coflow " + std::to_string(coflow.id) + " flow " +
                            std::to_string(f.flow_id) + " has negative volume");
    }
  }
}

void validate_coflow(const Fabric& fabric, const Coflow& coflow) {
  validate_flows(fabric, coflow);
  if (!(coflow.deadline > 0.0)) {
    throw ValidationError("coflow " + std::to_string(coflow.id) + " has non-positive deadline");
  }
}

LoadMatrix build_load_matrix(const Fabric& fabric, std::span<const Coflow> coflows) {
  const int ports = fabric.num_ports();
  const size_t n = coflows.size();

  std::vector<int> ids(n);
  std::vector<double> deadlines(n);
  std::vector<double> volumes(static_cast<size_t>(ports) * n, 0.0);
  std::vector<double> ptimes(static_cast<size_t>(ports) * n, 0.0);

  for (size_t c = 0; c < n; ++c) {
    const Coflow& k = coflows[c];
    validate_coflow(fabric, k);
    ids[c] = k.id;
    deadlines[c] = k.deadline;

    // Accumulate in a canonical flow order so the sums do not depend on the
    // order the flows were listed in.
    std::vector<const Flow*> ordered;
    ordered.reserve(k.flows.size());
    for (const Flow& f : k.flows) ordered.push_back(&f);
    std::sort(ordered.begin(), ordered.end(), [](const Flow* a, const Flow* b) {
      return std::tie(a->flow_id, a->ingress_port, a->egress_port, a->volume) <
             std::tie(b->flow_id, b->ingress_port, b->egress_port, b->volume);
    });

    for (const Flow* f : ordered) {
      volumes[static_cast<size_t>(f->ingress_port) * n + c] += f->volume;
      volumes[static_cast<size_t>(f->egress_port) * n + c] += f->volume;
    }
  }

  for (int port = 0; port < ports; ++port) {
    for (size_t c = 0; c < n; ++c) {
      ptimes[static_cast<size_t>(port) * n + c] =
          volumes[static_cast<size_t>(port) * n + c] / fabric.capacity(port);
    }
  }

  return LoadMatrix(ports, std::move(ids), std::move(deadlines), std::move(volumes),
                    std::move(ptimes));
}

double isolation_cct(const Fabric& fabric, const Coflow& coflow) {
  validate_flows(fabric, coflow);
  std::vector<double> per_port(static_cast<size_t>(fabric.num_ports()), 0.0);

  std::vector<const Flow*> ordered;
  ordered.reserve(coflow.flows.size());
  for (const Flow& f : coflow.flows) ordered.push_back(&f);
  std::sort(ordered.begin(), ordered.end(), [](const Flow* a, const Flow* b) {
    return std::tie(a->flow_id, a->ingress_port, a->egress_port, a->volume) <
           std::tie(b->flow_id, b->ingress_port, b->egress_port, b->volume);
  });
  for (const Flow* f : ordered) {
    per_port[static_cast<size_t>(f->ingress_port)] += f->volume;
    per_port[static_cast<size_t>(f->egress_port)] += f->volume;
  }

  double worst = 0.0;
  for (int port = 0; port < fabric.num_ports(); ++port) {
    worst = std::max(worst, per_port[static_cast<size_t>(port)] / fabric.capacity(port));
  }
  return worst;
}

}  // namespace coflowsim
