#ifndef COFLOWSIM_TRAFFIC_HPP
#define COFLOWSIM_TRAFFIC_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "coflowsim/coflow.hpp"
#include "coflowsim/fabric.hpp"

namespace coflowsim {

/// Two-class synthetic workload: class-1 coflows have a single flow, class-2
/// coflows have a flow count uniform in [ceil(2M/3), M] laid out as a random
/// machine-subset permutation. Deadlines are drawn relative to the coflow's
/// isolation completion time.
struct SyntheticConfig {
  int num_coflows = 0;
  double class1_prob = 0.6;
  /// Class-1 flow volumes ~ normal(mean, stddev) truncated at zero.
  double class1_volume_mean = 1.0;
  double class1_volume_stddev = 0.2;
  /// mean(class-1 flow volume) / mean(class-2 flow volume).
  double class_volume_ratio = 0.8;
  /// Deadline factor range [a, b], 1 <= a <= b: T = U[a,b] * isolation CCT.
  double deadline_factor_lo = 1.0;
  double deadline_factor_hi = 2.0;
  std::uint64_t rng_seed = 0;
};

/// Poisson arrival process; batches share one release instant. The batch
/// arrival rate is lambda / E[batch size], keeping the coflow rate at lambda.
struct ArrivalConfig {
  double lambda = 1.0;
  /// Batch size: fixed 1 when lo == hi == 1, else uniform integer in [lo, hi].
  int batch_lo = 1;
  int batch_hi = 1;
  int total_coflows = 0;
  std::uint64_t rng_seed = 0;
};

/// Draws one synthetic coflow (release 0, deadline relative to release).
Coflow gen_synthetic_coflow(const SyntheticConfig& cfg, const Fabric& fabric, int id,
                            std::mt19937_64& rng);

/// Offline batch of cfg.num_coflows coflows, ids 0..N-1, all released at 0.
std::vector<Coflow> gen_synthetic(const SyntheticConfig& cfg, const Fabric& fabric);

/// Arrival stream: each returned coflow carries its release time and an
/// absolute deadline (the factory's relative deadline shifted by the
/// release). The factory receives (id, rng).
std::vector<Coflow> gen_arrivals(const ArrivalConfig& cfg,
                                 const std::function<Coflow(int, std::mt19937_64&)>& make_coflow);

/// Synthetic arrival stream: gen_arrivals with a synthetic-coflow factory.
std::vector<Coflow> gen_synthetic_arrivals(const ArrivalConfig& arrivals,
                                           const SyntheticConfig& traffic, const Fabric& fabric);

/// Reads a MapReduce shuffle trace:
///   line 1:     <num_machines> <num_coflows>
///   per coflow: <id> <arrival_ms> <num_mappers> <mapper...>
///               <num_reducers> <reducer:total_volume...>
/// Every mapper sends total_volume / num_mappers to each reducer; machines
/// are mapped onto the fabric modulo M. Coflows with more than M flows are
/// dropped. Deadlines are left unset (0); assign them with assign_deadlines.
std::vector<Coflow> import_trace(const std::string& path, const Fabric& fabric);

/// Uniform sample of n coflows without replacement, input order preserved.
std::vector<Coflow> sample_coflows(const std::vector<Coflow>& coflows, int n,
                                   std::mt19937_64& rng);

/// Draws T = U[lo, hi] * isolation CCT for each coflow. With
/// shift_by_release, deadlines become release + T (online replay); otherwise
/// releases are forced to zero (offline).
void assign_deadlines(const Fabric& fabric, std::vector<Coflow>& coflows, double factor_lo,
                      double factor_hi, std::mt19937_64& rng, bool shift_by_release = false);

/// The 4-machine worked example: one 4-flow coflow with a unit deadline
/// against four singleton coflows of volume 1 + epsilon and deadline 2.
/// Ids 1..5. Earliest-deadline-first admission keeps only the wide coflow
/// here, while rejecting it instead admits everything else.
std::vector<Coflow> motivating_example(double epsilon = 0.1);

/// M-machine generalization of the worked example: coflow 1 spans every
/// machine pair, coflows 2..M are singletons on machines 0..M-2. Ids 1..M.
std::vector<Coflow> motivating_example_generalized(int machines, double epsilon = 0.1);

}  // namespace coflowsim

#endif
