// Command-line front end: generate workloads, run offline/online scheduling
// experiments, query the desk-scale oracles, and replay the built-in
// motivating example.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coflowsim/errors.hpp"
#include "coflowsim/exact.hpp"
#include "coflowsim/experiment.hpp"
#include "coflowsim/online.hpp"
#include "coflowsim/simulator.hpp"
#include "coflowsim/trace_io.hpp"
#include "coflowsim/traffic.hpp"

namespace {

using namespace coflowsim;

std::vector<SchedulerKind> parse_schedulers(const std::vector<std::string>& names) {
  std::vector<SchedulerKind> out;
  for (const std::string& name : names) out.push_back(parse_scheduler(name));
  if (out.empty()) {
    for (SchedulerKind kind : all_schedulers()) out.push_back(kind);
  }
  return out;
}

double parse_update_freq(const std::string& token) {
  if (token == "inf") return std::numeric_limits<double>::infinity();
  std::string digits = token;
  if (!digits.empty() && digits.back() == 'x') digits.pop_back();
  try {
    const double v = std::stod(digits);
    if (v > 0.0) return v;
  } catch (const std::exception&) {
  }
  throw ValidationError("bad update frequency '" + token + "' (expected inf, 0.5x, 1x or 2x)");
}

std::pair<int, int> parse_batch(const std::string& token) {
  const size_t dash = token.find('-');
  try {
    if (dash == std::string::npos) {
      const int v = std::stoi(token);
      return {v, v};
    }
    return {std::stoi(token.substr(0, dash)), std::stoi(token.substr(dash + 1))};
  } catch (const std::exception&) {
    throw ValidationError("bad batch spec '" + token + "' (expected 1 or 5-15)");
  }
}

// CSV goes to --out when given (summary to stdout), else to stdout with the
// summary on stderr.
template <typename WriteCsv, typename WriteSummary>
void emit(const std::string& out_path, WriteCsv&& write_csv, WriteSummary&& write_summary) {
  if (out_path.empty()) {
    write_csv(std::cout);
    write_summary(std::cerr);
  } else {
    std::ofstream out(out_path);
    if (!out) throw ValidationError("cannot open " + out_path + " for writing");
    write_csv(out);
    write_summary(std::cout);
  }
}

int cmd_gen(int machines, int num_coflows, std::uint64_t seed, double dl_lo, double dl_hi,
            const std::string& trace_path, const std::string& out_path) {
  const Fabric fabric = Fabric::uniform(machines);
  std::vector<Coflow> coflows;
  if (trace_path.empty()) {
    SyntheticConfig cfg;
    cfg.num_coflows = num_coflows;
    cfg.deadline_factor_lo = dl_lo;
    cfg.deadline_factor_hi = dl_hi;
    cfg.rng_seed = seed;
    coflows = gen_synthetic(cfg, fabric);
  } else {
    coflows = import_trace(trace_path, fabric);
    std::mt19937_64 rng(seed);
    if (num_coflows > 0) coflows = sample_coflows(coflows, num_coflows, rng);
    assign_deadlines(fabric, coflows, dl_lo, dl_hi, rng);
  }

  if (out_path.empty()) {
    write_canonical_trace(std::cout, coflows, fabric);
  } else {
    write_canonical_trace(out_path, coflows, fabric);
    std::cout << "wrote " << coflows.size() << " coflows to " << out_path << "\n";
  }
  return 0;
}

int cmd_offline(ExperimentSpec spec, const std::string& out_path, const std::string& gains_vs) {
  const OfflineSummary summary = run_offline_experiment(spec);

  emit(
      out_path, [&](std::ostream& os) { write_offline_csv(os, summary.rows); },
      [&](std::ostream& os) {
        os << "scheduler            mean_car   mean_prediction_error\n";
        for (SchedulerKind kind : spec.schedulers) {
          os << scheduler_name(kind);
          for (size_t pad = scheduler_name(kind).size(); pad < 21; ++pad) os << ' ';
          os << summary.mean_car.at(kind) << "   ";
          if (summary.mean_prediction_error.count(kind)) {
            os << summary.mean_prediction_error.at(kind);
          } else {
            os << "n/a";
          }
          os << '\n';
        }

        if (!gains_vs.empty()) {
          const SchedulerKind ref = parse_scheduler(gains_vs);
          std::map<SchedulerKind, std::vector<double>> cars;
          for (const OfflineRow& row : summary.rows) cars[row.scheduler].push_back(row.car);
          os << "\npercentile gains vs " << gains_vs << " (p1/p10/p50/p90/p99, excluded)\n";
          for (SchedulerKind kind : spec.schedulers) {
            if (kind == ref) continue;
            const PercentileGains g = percentile_gains(cars.at(kind), cars.at(ref));
            os << scheduler_name(kind) << ": " << g.p1 << " / " << g.p10 << " / " << g.p50
               << " / " << g.p90 << " / " << g.p99 << "  (" << g.excluded << " excluded)\n";
          }
        }
      });
  return 0;
}

int cmd_online(ExperimentSpec spec, const std::string& out_path) {
  const OnlineSummary summary = run_online_experiment(spec);

  emit(
      out_path, [&](std::ostream& os) { write_online_csv(os, summary.rows); },
      [&](std::ostream& os) {
        os << "scheduler  lambda  update_freq  mean_car\n";
        for (const auto& [key, mean] : summary.mean_car) {
          const auto& [kind, lambda, freq] = key;
          os << scheduler_name(kind) << "  " << lambda << "  ";
          if (std::isinf(freq)) {
            os << "inf";
          } else {
            os << freq << "x";
          }
          os << "  " << mean << '\n';
        }
      });
  return 0;
}

int cmd_oracle(int machines, int num_coflows, int instances, std::uint64_t seed, double dl_lo,
               double dl_hi, double gamma, int limit) {
  const Fabric fabric = Fabric::uniform(machines);
  std::cout << "instance,p2_bound,sigma_opt";
  for (SchedulerKind kind : all_schedulers()) std::cout << ',' << scheduler_name(kind) << "_car";
  std::cout << '\n';

  for (int instance = 0; instance < instances; ++instance) {
    SyntheticConfig cfg;
    cfg.num_coflows = num_coflows;
    cfg.deadline_factor_lo = dl_lo;
    cfg.deadline_factor_hi = dl_hi;
    cfg.rng_seed = seed ^ static_cast<std::uint64_t>(instance);
    const std::vector<Coflow> coflows = gen_synthetic(cfg, fabric);
    const LoadMatrix load = build_load_matrix(fabric, coflows);

    const OracleResult p2 = oracle_p2(load, limit);
    const OracleResult opt = oracle_sigma_car(fabric, coflows, limit);
    std::cout << instance << ',' << p2.best_count << ',' << opt.best_count;

    DcoflowConfig dcfg;
    dcfg.gamma = gamma;
    for (SchedulerKind kind : all_schedulers()) {
      const Schedule schedule = run_scheduler(kind, fabric, coflows, dcfg);
      const SimResult result = simulate(fabric, schedule, coflows);
      std::cout << ',' << car(result, static_cast<int>(coflows.size()));
    }
    std::cout << '\n';
  }
  return 0;
}

int cmd_example(int machines, double epsilon, bool show_rounds, double gamma,
                const std::string& outcomes_path, const std::vector<std::string>& names) {
  const Fabric fabric = Fabric::uniform(machines);
  const std::vector<Coflow> coflows =
      machines == 4 ? motivating_example(epsilon) : motivating_example_generalized(machines, epsilon);
  const int total = static_cast<int>(coflows.size());

  if (show_rounds) {
    std::vector<DcoflowRound> rounds;
    dcoflow_order(fabric, coflows, {}, &rounds);
    std::cout << "round  working_set          bottleneck  action  scores\n";
    for (size_t r = 0; r < rounds.size(); ++r) {
      const DcoflowRound& round = rounds[r];
      std::cout << r + 1 << "      {";
      for (size_t i = 0; i < round.working_set.size(); ++i) {
        std::cout << (i ? "," : "") << 'C' << round.working_set[i];
      }
      std::cout << "}  port " << round.bottleneck_port << "  "
                << (round.rejected ? "reject" : "admit ") << " C" << round.selected << "  ";
      for (const auto& [id, score] : round.candidate_scores) {
        std::cout << 'C' << id << ':' << score << ' ';
      }
      std::cout << '\n';
    }
    std::cout << '\n';
  }

  DcoflowConfig dcfg;
  dcfg.gamma = gamma;
  std::cout << "scheduler            accepted  car\n";
  for (SchedulerKind kind : all_schedulers()) {
    const Schedule schedule = run_scheduler(kind, fabric, coflows, dcfg);
    const SimResult result = simulate(fabric, schedule, coflows);
    std::cout << scheduler_name(kind);
    for (size_t pad = scheduler_name(kind).size(); pad < 21; ++pad) std::cout << ' ';
    std::cout << schedule.sigma.size() << "         " << car(result, total) << '\n';
  }

  if (!outcomes_path.empty()) {
    const SchedulerKind kind =
        names.empty() ? SchedulerKind::DcoflowV1 : parse_scheduler(names.front());
    const SimResult result =
        simulate(fabric, run_scheduler(kind, fabric, coflows, dcfg), coflows);
    std::ofstream out(outcomes_path);
    if (!out) throw ValidationError("cannot open " + outcomes_path + " for writing");
    write_outcomes_csv(out, result);
    std::cout << "wrote per-coflow outcomes of " << scheduler_name(kind) << " to "
              << outcomes_path << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coflow deadline scheduling toolkit"};
  app.require_subcommand(1);

  int machines = 10;
  int num_coflows = 10;
  int instances = 100;
  std::uint64_t seed = 0;
  double dl_lo = 1.0, dl_hi = 2.0;
  double gamma = 0.9;
  int threads = 0;
  std::string out_path, trace_path, gains_vs;
  std::vector<std::string> scheduler_names;

  auto add_common = [&](CLI::App* cmd, bool with_schedulers) {
    cmd->add_option("-m,--machines", machines, "fabric size M");
    cmd->add_option("-n,--num-coflows", num_coflows, "coflows per instance");
    cmd->add_option("-s,--seed", seed, "64-bit RNG seed");
    cmd->add_option("--deadline-min", dl_lo, "lower deadline factor (>= 1)");
    cmd->add_option("--deadline-max", dl_hi, "upper deadline factor");
    if (with_schedulers) {
      cmd->add_option("--scheduler", scheduler_names,
                      "dcoflow-v1, dcoflow-v2, cs-mha, sincronia, edd (default: all)")
          ->delimiter(',');
      cmd->add_option("--gamma", gamma, "dcoflow-v2 congestion threshold in (0,1]");
    }
  };

  CLI::App* gen = app.add_subcommand("gen", "generate a canonical trace file");
  add_common(gen, false);
  gen->add_option("--trace", trace_path, "import a shuffle trace instead of synthesizing");
  gen->add_option("-o,--out", out_path, "output file (default: stdout)");

  CLI::App* offline = app.add_subcommand("offline", "offline batch experiment");
  add_common(offline, true);
  offline->add_option("-i,--instances", instances, "instances to average over");
  offline->add_option("--trace", trace_path, "sample instances from this shuffle trace");
  offline->add_option("--percentiles-vs", gains_vs, "print percentile gains vs this scheduler");
  offline->add_option("-o,--out", out_path, "CSV output file (default: stdout)");
  offline->add_option("--threads", threads, "worker threads (default: hardware)");

  std::vector<std::string> lambda_names{"8"};
  std::vector<std::string> freq_names{"inf"};
  std::string batch_spec = "1";
  CLI::App* online = app.add_subcommand("online", "online arrival experiment");
  add_common(online, true);
  online->add_option("-i,--instances", instances, "instances to average over")->default_val(40);
  online->add_option("--lambda", lambda_names, "coflow arrival rates")->delimiter(',');
  online->add_option("--update-freq", freq_names, "inf, 0.5x, 1x, 2x (multiples of lambda)")
      ->delimiter(',');
  online->add_option("--batch", batch_spec, "coflows per arrival: 1 or a range like 5-15");
  online->add_option("-o,--out", out_path, "CSV output file (default: stdout)");
  online->add_option("--threads", threads, "worker threads (default: hardware)");

  int oracle_limit = 9;
  CLI::App* oracle = app.add_subcommand("oracle", "exact desk-scale bounds per instance");
  add_common(oracle, true);
  oracle->add_option("-i,--instances", instances, "instances to enumerate")->default_val(10);
  oracle->add_option("--limit", oracle_limit, "refuse instances larger than this");

  double epsilon = 0.1;
  bool show_rounds = false;
  CLI::App* example = app.add_subcommand(
      "example-fig1", "run every scheduler on the built-in contention example");
  example->add_option("-m,--machines", machines, "4 = base example, else the generalization")
      ->default_val(4);
  example->add_option("--epsilon", epsilon, "singleton volume excess, in (0,1)");
  example->add_option("--gamma", gamma, "dcoflow-v2 congestion threshold");
  example->add_flag("--rounds", show_rounds, "print the round-by-round execution log");
  example->add_option("--scheduler", scheduler_names, "scheduler for --outcomes (default dcoflow-v1)")
      ->delimiter(',');
  example->add_option("--outcomes", out_path, "write per-coflow result records to this CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      return cmd_gen(machines, num_coflows, seed, dl_lo, dl_hi, trace_path, out_path);
    }
    if (offline->parsed() || online->parsed()) {
      ExperimentSpec spec;
      spec.machines = machines;
      spec.num_coflows = num_coflows;
      spec.instances = instances;
      spec.schedulers = parse_schedulers(scheduler_names);
      spec.deadline_factor_lo = dl_lo;
      spec.deadline_factor_hi = dl_hi;
      spec.gamma = gamma;
      spec.seed = seed;
      spec.threads = threads;
      if (offline->parsed()) {
        if (!trace_path.empty()) {
          spec.source = TrafficSource::trace;
          spec.trace_path = trace_path;
        }
        return cmd_offline(spec, out_path, gains_vs);
      }
      for (const std::string& l : lambda_names) spec.lambdas.push_back(std::stod(l));
      for (const std::string& f : freq_names) spec.update_freqs.push_back(parse_update_freq(f));
      const auto [lo, hi] = parse_batch(batch_spec);
      spec.batch_lo = lo;
      spec.batch_hi = hi;
      return cmd_online(spec, out_path);
    }
    if (oracle->parsed()) {
      return cmd_oracle(machines, num_coflows, instances, seed, dl_lo, dl_hi, gamma, oracle_limit);
    }
    if (example->parsed()) {
      return cmd_example(machines, epsilon, show_rounds, gamma, out_path, scheduler_names);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
