#include "coflowsim/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "coflowsim/errors.hpp"
#include "coflowsim/load_matrix.hpp"

namespace coflowsim {

namespace {

void validate_synthetic_config(const SyntheticConfig& cfg) {
  if (cfg.num_coflows < 0) throw ValidationError("num_coflows must be non-negative");
  if (cfg.class1_prob < 0.0 || cfg.class1_prob > 1.0) {
    throw ValidationError("class1_prob must lie in [0, 1]");
  }
  if (cfg.class1_volume_stddev < 0.0) throw ValidationError("volume stddev must be non-negative");
  if (!(cfg.class1_volume_mean > 0.0)) throw ValidationError("volume mean must be positive");
  if (!(cfg.class_volume_ratio > 0.0)) throw ValidationError("volume ratio must be positive");
  if (!(cfg.deadline_factor_lo >= 1.0) || cfg.deadline_factor_hi < cfg.deadline_factor_lo) {
    throw ValidationError("deadline factor range must satisfy 1 <= lo <= hi");
  }
}

double truncated_normal(double mean, double stddev, std::mt19937_64& rng) {
  if (stddev == 0.0) return mean;
  std::normal_distribution<double> dist(mean, stddev);
  for (;;) {
    const double v = dist(rng);
    if (v > 0.0) return v;
  }
}

}  // namespace

Coflow gen_synthetic_coflow(const SyntheticConfig& cfg, const Fabric& fabric, int id,
                            std::mt19937_64& rng) {
  const int m = fabric.num_machines();
  if (m < 2) throw ValidationError("synthetic traffic needs at least 2 machines");

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const bool class1 = unit(rng) < cfg.class1_prob;

  const double class2_scale = 1.0 / cfg.class_volume_ratio;
  const double class2_mean = cfg.class1_volume_mean * class2_scale;
  const double class2_stddev = cfg.class1_volume_stddev * class2_scale;

  Coflow c;
  c.id = id;
  if (class1) {
    std::uniform_int_distribution<int> machine(0, m - 1);
    const int src = machine(rng);
    const int dst = machine(rng);
    c.flows.push_back(Flow{id, 0, fabric.ingress_port(src), fabric.egress_port(dst),
                           truncated_normal(cfg.class1_volume_mean, cfg.class1_volume_stddev, rng)});
  } else {
    const int width_lo = static_cast<int>(std::ceil(2.0 * m / 3.0));
    std::uniform_int_distribution<int> width_dist(width_lo, m);
    const int width = width_dist(rng);

    std::vector<int> machines(static_cast<size_t>(m));
    std::iota(machines.begin(), machines.end(), 0);
    std::shuffle(machines.begin(), machines.end(), rng);
    machines.resize(static_cast<size_t>(width));

    std::vector<int> targets = machines;
    std::shuffle(targets.begin(), targets.end(), rng);

    for (int j = 0; j < width; ++j) {
      c.flows.push_back(Flow{id, j, fabric.ingress_port(machines[static_cast<size_t>(j)]),
                             fabric.egress_port(targets[static_cast<size_t>(j)]),
                             truncated_normal(class2_mean, class2_stddev, rng)});
    }
  }

  std::uniform_real_distribution<double> factor(cfg.deadline_factor_lo, cfg.deadline_factor_hi);
  c.deadline = factor(rng) * isolation_cct(fabric, c);
  return c;
}

std::vector<Coflow> gen_synthetic(const SyntheticConfig& cfg, const Fabric& fabric) {
  validate_synthetic_config(cfg);
  std::mt19937_64 rng(cfg.rng_seed);
  std::vector<Coflow> out;
  out.reserve(static_cast<size_t>(cfg.num_coflows));
  for (int id = 0; id < cfg.num_coflows; ++id) {
    out.push_back(gen_synthetic_coflow(cfg, fabric, id, rng));
  }
  return out;
}

std::vector<Coflow> gen_arrivals(const ArrivalConfig& cfg,
                                 const std::function<Coflow(int, std::mt19937_64&)>& make_coflow) {
  if (!(cfg.lambda > 0.0)) throw ValidationError("arrival rate must be positive");
  if (cfg.batch_lo < 1 || cfg.batch_hi < cfg.batch_lo) {
    throw ValidationError("batch size range must satisfy 1 <= lo <= hi");
  }
  if (cfg.total_coflows < 0) throw ValidationError("total_coflows must be non-negative");

  const double mean_batch = 0.5 * (cfg.batch_lo + cfg.batch_hi);
  std::mt19937_64 rng(cfg.rng_seed);
  std::exponential_distribution<double> inter(cfg.lambda / mean_batch);
  std::uniform_int_distribution<int> batch(cfg.batch_lo, cfg.batch_hi);

  std::vector<Coflow> out;
  out.reserve(static_cast<size_t>(cfg.total_coflows));
  double t = 0.0;
  int id = 0;
  while (id < cfg.total_coflows) {
    t += inter(rng);
    int size = batch(rng);
    size = std::min(size, cfg.total_coflows - id);
    for (int j = 0; j < size; ++j) {
      Coflow c = make_coflow(id, rng);
      c.release_time = t;
      c.deadline += t;  // factory deadlines are relative to release
      out.push_back(std::move(c));
      ++id;
    }
  }
  return out;
}

std::vector<Coflow> gen_synthetic_arrivals(const ArrivalConfig& arrivals,
                                           const SyntheticConfig& traffic, const Fabric& fabric) {
  validate_synthetic_config(traffic);
  return gen_arrivals(arrivals, [&](int id, std::mt19937_64& rng) {
    return gen_synthetic_coflow(traffic, fabric, id, rng);
  });
}

std::vector<Coflow> import_trace(const std::string& path, const Fabric& fabric) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open trace file " + path);

  const int m = fabric.num_machines();
  std::string line;
  long line_no = 0;

  // Header: machine count and coflow count.
  if (!std::getline(in, line)) return {};
  ++line_no;
  {
    std::istringstream hs(line);
    int trace_machines = 0, trace_coflows = 0;
    if (!(hs >> trace_machines >> trace_coflows) || trace_machines < 1) {
      throw ParseError("malformed trace header", line_no);
    }
  }

  std::vector<Coflow> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);

    Coflow c;
    double arrival_ms = 0.0;
    int num_mappers = 0;
    if (!(ls >> c.id >> arrival_ms >> num_mappers) || num_mappers < 1) {
      throw ParseError("malformed coflow record", line_no);
    }
    c.release_time = arrival_ms;

    std::vector<int> mappers(static_cast<size_t>(num_mappers));
    for (int& machine : mappers) {
      if (!(ls >> machine)) throw ParseError("missing mapper location", line_no);
    }

    int num_reducers = 0;
    if (!(ls >> num_reducers) || num_reducers < 1) {
      throw ParseError("malformed reducer count", line_no);
    }

    int flow_id = 0;
    for (int r = 0; r < num_reducers; ++r) {
      std::string tok;
      if (!(ls >> tok)) throw ParseError("missing reducer record", line_no);
      const size_t colon = tok.find(':');
      if (colon == std::string::npos) throw ParseError("reducer record needs machine:volume", line_no);
      int reducer = 0;
      double total_volume = 0.0;
      try {
        reducer = std::stoi(tok.substr(0, colon));
        total_volume = std::stod(tok.substr(colon + 1));
      } catch (const std::exception&) {
        throw ParseError("malformed reducer record", line_no);
      }
      if (total_volume < 0.0) throw ParseError("negative reducer volume", line_no);

      const double per_mapper = total_volume / num_mappers;
      for (int mapper : mappers) {
        c.flows.push_back(Flow{c.id, flow_id++, fabric.ingress_port(((mapper % m) + m) % m),
                               fabric.egress_port(((reducer % m) + m) % m), per_mapper});
      }
    }

    if (static_cast<int>(c.flows.size()) <= m) out.push_back(std::move(c));
  }
  return out;
}

std::vector<Coflow> sample_coflows(const std::vector<Coflow>& coflows, int n,
                                   std::mt19937_64& rng) {
  if (n < 0) throw ValidationError("sample size must be non-negative");
  if (n > static_cast<int>(coflows.size())) {
    throw ValidationError("cannot sample " + std::to_string(n) + " coflows from " +
                          std::to_string(coflows.size()));
  }
  std::vector<Coflow> out;
  out.reserve(static_cast<size_t>(n));
  std::sample(coflows.begin(), coflows.end(), std::back_inserter(out), n, rng);
  return out;
}

void assign_deadlines(const Fabric& fabric, std::vector<Coflow>& coflows, double factor_lo,
                      double factor_hi, std::mt19937_64& rng, bool shift_by_release) {
  if (!(factor_lo >= 1.0) || factor_hi < factor_lo) {
    throw ValidationError("deadline factor range must satisfy 1 <= lo <= hi");
  }
  std::uniform_real_distribution<double> factor(factor_lo, factor_hi);
  for (Coflow& c : coflows) {
    const double relative = factor(rng) * isolation_cct(fabric, c);
    if (shift_by_release) {
      c.deadline = c.release_time + relative;
    } else {
      c.release_time = 0.0;
      c.deadline = relative;
    }
  }
}

namespace {

// One wide unit-volume coflow across every machine pair (deadline 1) plus
// `singletons` single-flow coflows of volume 1 + epsilon (deadline 2) on
// machines 0, 1, ...
std::vector<Coflow> contention_example(int machines, int singletons, double epsilon) {
  if (machines < 2) throw ValidationError("the example needs at least 2 machines");
  if (!(epsilon > 0.0) || epsilon >= 1.0) throw ValidationError("epsilon must lie in (0, 1)");

  std::vector<Coflow> out;
  Coflow wide;
  wide.id = 1;
  wide.deadline = 1.0;
  for (int j = 0; j < machines; ++j) {
    wide.flows.push_back(Flow{1, j, j, machines + j, 1.0});
  }
  out.push_back(std::move(wide));

  for (int s = 0; s < singletons; ++s) {
    Coflow c;
    c.id = 2 + s;
    c.deadline = 2.0;
    c.flows.push_back(Flow{c.id, 0, s, machines + s, 1.0 + epsilon});
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

std::vector<Coflow> motivating_example(double epsilon) {
  return contention_example(4, 4, epsilon);
}

std::vector<Coflow> motivating_example_generalized(int machines, double epsilon) {
  return contention_example(machines, machines - 1, epsilon);
}

}  // namespace coflowsim
