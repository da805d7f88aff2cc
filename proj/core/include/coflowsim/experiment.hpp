#ifndef COFLOWSIM_EXPERIMENT_HPP
#define COFLOWSIM_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coflowsim/online.hpp"
#include "coflowsim/scheduler.hpp"

namespace coflowsim {

/// Where experiment instances come from.
enum class TrafficSource {
  synthetic,   // two-class generator, fresh instance per seed
  trace,       // sample from an imported shuffle trace, deadlines re-drawn
  motivating,  // the fixed worked example (epsilon-parameterized)
};

struct ExperimentSpec {
  int machines = 10;
  int num_coflows = 10;
  std::vector<SchedulerKind> schedulers;
  int instances = 100;  // offline default; online studies usually use 40

  TrafficSource source = TrafficSource::synthetic;
  std::string trace_path;    // source == trace
  double epsilon = 0.1;      // source == motivating
  double deadline_factor_lo = 1.0;
  double deadline_factor_hi = 2.0;

  // Online sweeps.
  std::vector<double> lambdas;
  /// Update frequencies as multiples of lambda; infinity = per-arrival.
  std::vector<double> update_freqs;
  int batch_lo = 1;
  int batch_hi = 1;

  double gamma = 0.9;  // dcoflow-v2 threshold
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = hardware concurrency
};

struct OfflineRow {
  int instance = 0;
  SchedulerKind scheduler = SchedulerKind::DcoflowV1;
  int machines = 0;
  int num_coflows = 0;
  std::uint64_t seed = 0;
  double car = 0.0;
  std::optional<double> prediction_error;  // unset when the order was empty
  double wall_ms = 0.0;
};

struct OfflineSummary {
  std::vector<OfflineRow> rows;  // sorted by (instance, scheduler)
  /// Mean CAR and mean prediction error per scheduler, over the rows.
  std::map<SchedulerKind, double> mean_car;
  std::map<SchedulerKind, double> mean_prediction_error;
};

struct OnlineRow {
  int instance = 0;
  SchedulerKind scheduler = SchedulerKind::DcoflowV1;
  double lambda = 0.0;
  double update_freq = 0.0;  // multiple of lambda; inf = per-arrival
  int machines = 0;
  int arrivals = 0;
  std::uint64_t seed = 0;
  double car = 0.0;
  double wall_ms = 0.0;
};

struct OnlineSummary {
  std::vector<OnlineRow> rows;
  /// Keyed by (scheduler, lambda, update_freq).
  std::map<std::tuple<SchedulerKind, double, double>, double> mean_car;
};

OfflineSummary run_offline_experiment(const ExperimentSpec& spec);
OnlineSummary run_online_experiment(const ExperimentSpec& spec);

/// Per-instance CAR gains of a scheduler against a reference
/// (compared / reference - 1), reduced to empirical percentiles. Instances
/// with a zero reference CAR are excluded and counted.
struct PercentileGains {
  double p1 = 0.0, p10 = 0.0, p50 = 0.0, p90 = 0.0, p99 = 0.0;
  int excluded = 0;
};
PercentileGains percentile_gains(const std::vector<double>& compared,
                                 const std::vector<double>& reference);

/// Flat CSV emission. Timing can be suppressed for byte-identical reruns.
void write_offline_csv(std::ostream& out, const std::vector<OfflineRow>& rows,
                       bool include_timing = true);
void write_online_csv(std::ostream& out, const std::vector<OnlineRow>& rows,
                      bool include_timing = true);

/// Per-coflow result records {id, accepted, completion, deadline, on_time}.
void write_outcomes_csv(std::ostream& out, const SimResult& result);

}  // namespace coflowsim

#endif
