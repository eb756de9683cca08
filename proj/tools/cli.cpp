#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ris_sei/analytic.hpp"
#include "ris_sei/channel.hpp"
#include "ris_sei/csv_io.hpp"
#include "ris_sei/detector.hpp"
#include "ris_sei/errors.hpp"
#include "ris_sei/experiment.hpp"
#include "ris_sei/monte_carlo.hpp"
#include "ris_sei/ris_optimizer.hpp"
#include "ris_sei/scenario.hpp"
#include "ris_sei/trace_io.hpp"
#include "ris_sei/validation.hpp"

namespace ris_sei::cli {

namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr const char* kSeedEnv = "RIS_SEI_SEED";

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv(kSeedEnv);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    const auto value = std::stoull(raw, &used);
    if (used != std::string_view(raw).size()) throw std::invalid_argument(raw);
    return value;
  } catch (const std::exception&) {
    throw UsageError(fmt::format("{}: '{}' is not an unsigned integer", kSeedEnv, raw));
  }
}

/// --seed wins over the scenario file, which wins over RIS_SEI_SEED.
ScenarioConfig load_scenario(const std::string& path, const std::optional<std::uint64_t>& cli_seed,
                             bool needs_seed) {
  const std::string text = read_file(path);
  std::optional<std::uint64_t> fallback = cli_seed ? cli_seed : env_seed();
  if (!fallback && !needs_seed) fallback = 0;
  try {
    ScenarioConfig scenario = parse_scenario(text, fallback);
    return cli_seed ? scenario.with_seed(*cli_seed) : scenario;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::MissingKey && e.subject() == "seed") {
      throw UsageError(fmt::format("--seed: required (or set 'seed' in {} or {})", path, kSeedEnv));
    }
    throw;
  }
}

std::uint64_t require_seed(const std::optional<std::uint64_t>& cli_seed) {
  if (cli_seed) return *cli_seed;
  if (auto s = env_seed()) return *s;
  throw UsageError(fmt::format("--seed: required (or set {})", kSeedEnv));
}

VarianceMode parse_mode(const std::string& mode) {
  if (mode == "paper") return VarianceMode::PaperExact;
  if (mode == "calibrated") return VarianceMode::OracleCalibrated;
  throw UsageError(fmt::format("--mode: expected paper or calibrated, got '{}'", mode));
}

void emit(std::ostream& out, const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_file_atomic(path, content);
  }
}

fs::path subcarrier_path(const fs::path& base, std::size_t k, std::size_t count) {
  if (count == 1) return base;
  fs::path p = base;
  p.replace_filename(fmt::format("{}.k{}{}", base.stem().string(), k, base.extension().string()));
  return p;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"RIS-assisted RSS spoofing detection: simulation, analytics and validation", "ris-sei"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  std::string out_path;
  std::string scenario_path;
  std::string mode = "paper";
  std::size_t trials = 100000;

  const auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "RNG seed (falls back to the scenario file, then RIS_SEI_SEED)");
  };
  const auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", threads, "worker threads; 0 uses all cores")->default_val(0);
  };
  const auto add_out = [&](CLI::App* sub) { sub->add_option("--out", out_path, "output file (default stdout)"); };
  const auto add_scenario = [&](CLI::App* sub) {
    sub->add_option("--scenario", scenario_path, "scenario file")->required();
  };

  // simulate
  auto* simulate = app.add_subcommand("simulate", "simulate one block per subcarrier and write I/Q traces");
  std::string hypothesis = "h0";
  std::uint64_t sample_rate = 1000000;
  std::string trace_out;
  add_scenario(simulate);
  add_seed(simulate);
  simulate->add_option("--hypothesis", hypothesis, "h0 (Alice) or h1 (Eve)")->check(CLI::IsMember({"h0", "h1"}));
  simulate->add_option("--sample-rate", sample_rate, "sample rate written to the trace header");
  simulate->add_option("--out", trace_out, "trace path; subcarrier k>1 files get a .k<k> suffix")->required();

  // stats
  auto* stats = app.add_subcommand("stats", "analytic hypothesis statistics in both variance modes (CSV)");
  add_scenario(stats);
  add_seed(stats);
  add_threads(stats);
  add_out(stats);
  stats->add_option("--trials", trials, "calibration trials")->default_val(100000);

  // roc
  auto* roc = app.add_subcommand("roc", "analytic and empirical ROC (CSV)");
  std::size_t points = 20;
  add_scenario(roc);
  add_seed(roc);
  add_threads(roc);
  add_out(roc);
  roc->add_option("--points", points, "false-alarm grid points")->default_val(20);
  roc->add_option("--trials", trials, "Monte-Carlo trials per hypothesis")->default_val(100000);
  roc->add_option("--mode", mode, "analytic variance mode: paper or calibrated")->default_val("calibrated");

  // threshold
  auto* threshold = app.add_subcommand("threshold", "detection threshold for a target P_f or the optimum");
  std::optional<double> target_pf;
  bool optimal = false;
  add_scenario(threshold);
  add_seed(threshold);
  add_threads(threshold);
  auto* pf_opt = threshold->add_option("--target-pf", target_pf, "target false-alarm probability");
  auto* opt_flag = threshold->add_flag("--optimal", optimal, "threshold minimising P_f + P_m");
  pf_opt->excludes(opt_flag);
  threshold->add_option("--mode", mode, "variance mode: paper or calibrated")->default_val("paper");
  threshold->add_option("--trials", trials, "calibration trials")->default_val(100000);

  // detect
  auto* detect = app.add_subcommand("detect", "decide normal/under-attack from two recorded traces");
  std::string reference_path, observation_path;
  double detect_threshold = 0.0;
  detect->add_option("--reference", reference_path, "legitimate reference trace")->required();
  detect->add_option("--observation", observation_path, "observed trace")->required();
  detect->add_option("--threshold", detect_threshold, "detection threshold")->required();

  // validate
  auto* validate = app.add_subcommand("validate", "oracle-vs-analytics validation report");
  std::size_t val_trials = ValidationOptions{}.trials;
  std::size_t var_trials = ValidationOptions{}.variance_trials;
  add_seed(validate);
  add_threads(validate);
  add_out(validate);
  validate->add_option("--trials", val_trials, "trials per Monte-Carlo estimate");
  validate->add_option("--variance-trials", var_trials, "trials per seed in the variance adjudication");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "simulated replication of the two location experiments");
  ExperimentDescriptor desc;
  add_seed(experiment);
  add_threads(experiment);
  add_out(experiment);
  experiment->add_option("--name", desc.name, "experiment1 or experiment2")->required();
  experiment->add_option("--trials", desc.n_trials, "trials per hypothesis");
  experiment->add_option("--grid-points", desc.grid_points, "false-alarm grid points");
  experiment->add_option("--samples-per-block", desc.samples_per_block);
  experiment->add_option("--n-elements", desc.n_elements);
  experiment->add_option("--var-ar", desc.var_ar);
  experiment->add_option("--var-rb", desc.var_rb);
  experiment->add_option("--var-a", desc.var_a);
  experiment->add_option("--var-e", desc.var_e);
  experiment->add_option("--noise-var", desc.noise_var);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "RIS size sweep with coherent configurations (CSV)");
  std::size_t n_min = 1, n_max = 64, n_step = 1;
  double sweep_pf = 0.1;
  add_scenario(sweep);
  add_seed(sweep);
  add_threads(sweep);
  add_out(sweep);
  sweep->add_option("--n-min", n_min)->default_val(1);
  sweep->add_option("--n-max", n_max)->default_val(64);
  sweep->add_option("--n-step", n_step)->default_val(1);
  sweep->add_option("--target-pf", sweep_pf)->default_val(0.1);
  sweep->add_option("--mode", mode, "variance mode: paper or calibrated")->default_val("paper");
  sweep->add_option("--trials", trials, "calibration trials per size")->default_val(100000);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*simulate) {
      const ScenarioConfig scenario = load_scenario(scenario_path, seed, true);
      const Hypothesis h = hypothesis == "h0" ? Hypothesis::Legitimate : Hypothesis::Spoofing;
      const RandomStream rng = RandomStream(scenario.seed()).substream(stream_tag::kSimulate);
      const auto blocks = simulate_subcarriers(scenario, h, rng.substream(h == Hypothesis::Legitimate ? 0 : 1));
      for (std::size_t k = 0; k < blocks.size(); ++k) {
        const fs::path path = subcarrier_path(trace_out, k + 1, blocks.size());
        write_trace(path, blocks[k].samples, sample_rate);
        out << path.string() << "\n";
      }
    } else if (*stats) {
      const ScenarioConfig scenario = load_scenario(scenario_path, seed, true);
      std::string csv = stats_csv(derive_stats(scenario, VarianceMode::PaperExact));
      csv += stats_csv(derive_stats(scenario, VarianceMode::OracleCalibrated, {trials, threads}), false);
      emit(out, out_path, csv);
    } else if (*roc) {
      const VarianceMode m = parse_mode(mode);
      const ScenarioConfig scenario = load_scenario(scenario_path, seed, true);
      const HypothesisStats s = derive_stats(scenario, m, {trials, threads});
      const RocCurve analytic = analytic_roc(s, points);
      std::vector<double> thresholds;
      for (const auto& p : analytic.points) thresholds.push_back(p.threshold);
      std::sort(thresholds.begin(), thresholds.end());
      emit(out, out_path, roc_csv({analytic, empirical_roc(scenario, thresholds, trials, threads)}));
    } else if (*threshold) {
      if (!target_pf && !optimal) throw UsageError("threshold: one of --target-pf or --optimal is required");
      const VarianceMode m = parse_mode(mode);
      const ScenarioConfig scenario = load_scenario(scenario_path, seed, m == VarianceMode::OracleCalibrated);
      const HypothesisStats s = derive_stats(scenario, m, {trials, threads});
      if (target_pf) {
        if (!(*target_pf > 0.0 && *target_pf < 1.0)) {
          throw UsageError(fmt::format("--target-pf: {} is outside (0,1)", *target_pf));
        }
        out << fmt::format("method=target_pf\nthreshold={}\n", threshold_for_target_pf(*target_pf, s));
      } else {
        const OptimalThreshold t = optimal_threshold(s);
        const char* method = t.method == OptimalThreshold::Method::ClosedForm      ? "closed_form"
                             : t.method == OptimalThreshold::Method::EqualVariance ? "equal_variance"
                                                                                   : "numeric";
        out << fmt::format("method={}\nthreshold={}\noverall_error={}\n", method, t.value,
                           overall_error(t.value, s));
      }
    } else if (*detect) {
      const Trace reference = read_trace(reference_path);
      const Trace observation = read_trace(observation_path);
      const Decision d = decide(delta_t(rss(reference.block), rss(observation.block)), detect_threshold);
      out << "verdict,delta,ref_rss,obs_rss,threshold\n";
      out << fmt::format("{},{},{},{},{}\n", d.verdict == Verdict::UnderAttack ? "under_attack" : "normal",
                         d.statistic.delta, d.statistic.ref_rss.value, d.statistic.obs_rss.value, d.threshold);
    } else if (*validate) {
      ValidationOptions o;
      o.seed = require_seed(seed);
      o.trials = val_trials;
      o.variance_trials = var_trials;
      o.threads = threads;
      emit(out, out_path, render_validation_report(run_validation(o)));
    } else if (*experiment) {
      desc.seed = require_seed(seed);
      desc.threads = threads;
      emit(out, out_path, render_experiment_report(run_experiment_suite(desc)));
    } else if (*sweep) {
      const VarianceMode m = parse_mode(mode);
      const ScenarioConfig scenario = load_scenario(scenario_path, seed, m == VarianceMode::OracleCalibrated);
      SweepOptions so;
      so.seed = scenario.seed();
      so.calibration = {trials, threads};
      emit(out, out_path,
           sweep_csv(sweep_size(scenario.channel(), scenario.samples_per_block(), {n_min, n_max, n_step}, sweep_pf,
                                m, so)));
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::UnknownExperiment) {
      err << "usage error: --name: " << e.what() << "\n";
      return kExitUsage;
    }
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace ris_sei::cli
