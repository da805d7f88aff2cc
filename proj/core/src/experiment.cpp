#include "coflowsim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <ostream>
#include <random>
#include <thread>

#include "coflowsim/errors.hpp"
#include "coflowsim/traffic.hpp"

namespace coflowsim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

void parallel_for(int jobs, int threads, const std::function<void(int)>& fn) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, jobs));

  if (threads == 1) {
    for (int j = 0; j < jobs; ++j) fn(j);
    return;
  }

  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto work = [&] {
    for (;;) {
      const int j = next.fetch_add(1);
      if (j >= jobs || failed.load()) return;
      try {
        fn(j);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(work);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

void validate_spec(const ExperimentSpec& spec) {
  if (spec.instances < 1) throw ValidationError("instance count must be at least 1");
  if (spec.machines < 1) throw ValidationError("fabric needs at least one machine");
  if (spec.schedulers.empty()) throw ValidationError("no schedulers selected");
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

OfflineSummary run_offline_experiment(const ExperimentSpec& spec) {
  validate_spec(spec);
  const Fabric fabric = Fabric::uniform(spec.machines);

  // The trace is loaded once and shared read-only across workers.
  std::vector<Coflow> trace_pool;
  if (spec.source == TrafficSource::trace) {
    trace_pool = import_trace(spec.trace_path, fabric);
    if (static_cast<int>(trace_pool.size()) < spec.num_coflows) {
      throw ValidationError("trace holds only " + std::to_string(trace_pool.size()) +
                            " usable coflows, need " + std::to_string(spec.num_coflows));
    }
  }

  const int num_scheds = static_cast<int>(spec.schedulers.size());
  std::vector<OfflineRow> rows(static_cast<size_t>(spec.instances) *
                               static_cast<size_t>(num_scheds));

  parallel_for(spec.instances, spec.threads, [&](int instance) {
    const std::uint64_t instance_seed = spec.seed ^ static_cast<std::uint64_t>(instance);

    std::vector<Coflow> coflows;
    switch (spec.source) {
      case TrafficSource::synthetic: {
        SyntheticConfig cfg;
        cfg.num_coflows = spec.num_coflows;
        cfg.deadline_factor_lo = spec.deadline_factor_lo;
        cfg.deadline_factor_hi = spec.deadline_factor_hi;
        cfg.rng_seed = instance_seed;
        coflows = gen_synthetic(cfg, fabric);
        break;
      }
      case TrafficSource::trace: {
        std::mt19937_64 rng(instance_seed);
        coflows = sample_coflows(trace_pool, spec.num_coflows, rng);
        assign_deadlines(fabric, coflows, spec.deadline_factor_lo, spec.deadline_factor_hi, rng);
        break;
      }
      case TrafficSource::motivating:
        coflows = spec.machines == 4 ? motivating_example(spec.epsilon)
                                     : motivating_example_generalized(spec.machines, spec.epsilon);
        break;
    }

    DcoflowConfig dcfg;
    dcfg.gamma = spec.gamma;
    for (int s = 0; s < num_scheds; ++s) {
      const SchedulerKind kind = spec.schedulers[static_cast<size_t>(s)];
      const auto start = std::chrono::steady_clock::now();
      const Schedule schedule = run_scheduler(kind, fabric, coflows, dcfg);
      const double wall = elapsed_ms(start);
      const SimResult sim = simulate(fabric, schedule, coflows);

      OfflineRow row;
      row.instance = instance;
      row.scheduler = kind;
      row.machines = spec.machines;
      row.num_coflows = static_cast<int>(coflows.size());
      row.seed = instance_seed;
      row.car = car(sim, static_cast<int>(coflows.size()));
      if (!schedule.sigma.empty()) row.prediction_error = prediction_error(schedule, sim);
      row.wall_ms = wall;
      rows[static_cast<size_t>(instance) * static_cast<size_t>(num_scheds) +
           static_cast<size_t>(s)] = row;
    }
  });

  OfflineSummary summary;
  summary.rows = std::move(rows);
  std::map<SchedulerKind, std::pair<double, int>> car_acc;
  std::map<SchedulerKind, std::pair<double, int>> err_acc;
  for (const OfflineRow& row : summary.rows) {
    car_acc[row.scheduler].first += row.car;
    car_acc[row.scheduler].second += 1;
    if (row.prediction_error) {
      err_acc[row.scheduler].first += *row.prediction_error;
      err_acc[row.scheduler].second += 1;
    }
  }
  for (const auto& [kind, acc] : car_acc) summary.mean_car[kind] = acc.first / acc.second;
  for (const auto& [kind, acc] : err_acc) {
    summary.mean_prediction_error[kind] = acc.first / acc.second;
  }
  return summary;
}

OnlineSummary run_online_experiment(const ExperimentSpec& spec) {
  validate_spec(spec);
  if (spec.lambdas.empty()) throw ValidationError("online experiment needs arrival rates");
  if (spec.update_freqs.empty()) throw ValidationError("online experiment needs update frequencies");
  const Fabric fabric = Fabric::uniform(spec.machines);

  struct Job {
    int lambda_idx, freq_idx, sched_idx, instance;
  };
  std::vector<Job> jobs;
  for (int l = 0; l < static_cast<int>(spec.lambdas.size()); ++l) {
    for (int f = 0; f < static_cast<int>(spec.update_freqs.size()); ++f) {
      for (int s = 0; s < static_cast<int>(spec.schedulers.size()); ++s) {
        for (int i = 0; i < spec.instances; ++i) jobs.push_back(Job{l, f, s, i});
      }
    }
  }

  std::vector<OnlineRow> rows(jobs.size());
  parallel_for(static_cast<int>(jobs.size()), spec.threads, [&](int j) {
    const Job& job = jobs[static_cast<size_t>(j)];
    const double lambda = spec.lambdas[static_cast<size_t>(job.lambda_idx)];
    const double freq = spec.update_freqs[static_cast<size_t>(job.freq_idx)];
    const SchedulerKind kind = spec.schedulers[static_cast<size_t>(job.sched_idx)];

    // The arrival stream is a function of (seed, instance, lambda) only, so
    // schedulers and update frequencies face identical workloads.
    const std::uint64_t instance_seed = spec.seed ^ static_cast<std::uint64_t>(job.instance);
    const std::uint64_t stream_seed =
        splitmix64(instance_seed + static_cast<std::uint64_t>(job.lambda_idx));

    SyntheticConfig traffic;
    traffic.deadline_factor_lo = spec.deadline_factor_lo;
    traffic.deadline_factor_hi = spec.deadline_factor_hi;

    ArrivalConfig arrivals;
    arrivals.lambda = lambda;
    arrivals.batch_lo = spec.batch_lo;
    arrivals.batch_hi = spec.batch_hi;
    arrivals.total_coflows = spec.num_coflows;
    arrivals.rng_seed = stream_seed;

    const std::vector<Coflow> stream = gen_synthetic_arrivals(arrivals, traffic, fabric);

    OnlineConfig cfg;
    cfg.scheduler = kind;
    cfg.dcoflow_cfg.gamma = spec.gamma;
    if (std::isinf(freq)) {
      cfg.mode = UpdateMode::per_arrival;
    } else {
      cfg.mode = UpdateMode::periodic;
      cfg.period = 1.0 / (freq * lambda);
    }

    const auto start = std::chrono::steady_clock::now();
    const SimResult result = run_online(fabric, stream, cfg);

    OnlineRow row;
    row.instance = job.instance;
    row.scheduler = kind;
    row.lambda = lambda;
    row.update_freq = freq;
    row.machines = spec.machines;
    row.arrivals = static_cast<int>(stream.size());
    row.seed = stream_seed;
    row.car = car(result, static_cast<int>(stream.size()));
    row.wall_ms = elapsed_ms(start);
    rows[static_cast<size_t>(j)] = row;
  });

  OnlineSummary summary;
  summary.rows = std::move(rows);
  std::map<std::tuple<SchedulerKind, double, double>, std::pair<double, int>> acc;
  for (const OnlineRow& row : summary.rows) {
    auto& a = acc[{row.scheduler, row.lambda, row.update_freq}];
    a.first += row.car;
    a.second += 1;
  }
  for (const auto& [key, a] : acc) summary.mean_car[key] = a.first / a.second;
  return summary;
}

PercentileGains percentile_gains(const std::vector<double>& compared,
                                 const std::vector<double>& reference) {
  if (compared.size() != reference.size()) {
    throw ValidationError("percentile gains need the same instance set for both schedulers");
  }
  std::vector<double> gains;
  int excluded = 0;
  for (size_t i = 0; i < compared.size(); ++i) {
    if (reference[i] == 0.0) {
      ++excluded;
    } else {
      gains.push_back(compared[i] / reference[i] - 1.0);
    }
  }
  if (gains.empty()) {
    throw ValidationError("every instance had a zero reference acceptance rate");
  }
  std::sort(gains.begin(), gains.end());

  auto nearest_rank = [&](double pct) {
    const size_t n = gains.size();
    size_t rank = static_cast<size_t>(std::ceil(pct / 100.0 * static_cast<double>(n)));
    rank = std::clamp<size_t>(rank, 1, n);
    return gains[rank - 1];
  };

  PercentileGains out;
  out.p1 = nearest_rank(1.0);
  out.p10 = nearest_rank(10.0);
  out.p50 = nearest_rank(50.0);
  out.p90 = nearest_rank(90.0);
  out.p99 = nearest_rank(99.0);
  out.excluded = excluded;
  return out;
}

void write_offline_csv(std::ostream& out, const std::vector<OfflineRow>& rows,
                       bool include_timing) {
  out << "instance_id,scheduler,M,N,seed,car,prediction_error";
  if (include_timing) out << ",wall_time_ms";
  out << '\n';
  for (const OfflineRow& row : rows) {
    out << row.instance << ',' << scheduler_name(row.scheduler) << ',' << row.machines << ','
        << row.num_coflows << ',' << row.seed << ',' << format_double(row.car) << ',';
    if (row.prediction_error) out << format_double(*row.prediction_error);
    if (include_timing) out << ',' << format_double(row.wall_ms);
    out << '\n';
  }
}

void write_online_csv(std::ostream& out, const std::vector<OnlineRow>& rows, bool include_timing) {
  out << "instance_id,scheduler,lambda,update_freq,M,arrivals,seed,car";
  if (include_timing) out << ",wall_time_ms";
  out << '\n';
  for (const OnlineRow& row : rows) {
    out << row.instance << ',' << scheduler_name(row.scheduler) << ','
        << format_double(row.lambda) << ',';
    if (std::isinf(row.update_freq)) {
      out << "inf";
    } else {
      out << format_double(row.update_freq);
    }
    out << ',' << row.machines << ',' << row.arrivals << ',' << row.seed << ','
        << format_double(row.car);
    if (include_timing) out << ',' << format_double(row.wall_ms);
    out << '\n';
  }
}

void write_outcomes_csv(std::ostream& out, const SimResult& result) {
  out << "id,accepted,completion_time,deadline,on_time\n";
  for (const CoflowOutcome& o : result.coflows) {
    out << o.id << ',' << (o.accepted ? 1 : 0) << ',';
    if (o.completion) out << format_double(*o.completion);
    out << ',' << format_double(o.deadline) << ',' << (o.on_time ? 1 : 0) << '\n';
  }
}

}  // namespace coflowsim
