#include "ris_sei/experiment.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "ris_sei/csv_io.hpp"
#include "ris_sei/errors.hpp"
#include "ris_sei/monte_carlo.hpp"
#include "ris_sei/random.hpp"
#include "ris_sei/ris_optimizer.hpp"
#include "ris_sei/scenario.hpp"

namespace ris_sei {

namespace {

bool is_experiment1(const std::string& name) { return name == "experiment1"; }

void check_name(const std::string& name) {
  if (name != "experiment1" && name != "experiment2") {
    throw Error(ErrorKind::UnknownExperiment, name, "expected experiment1 or experiment2");
  }
}

ExperimentArm run_arm(const ExperimentDescriptor& d, RisState state, std::span<const double> pf_grid,
                      double target_pf) {
  const ScenarioConfig scenario = experiment_scenario(d, state);
  const DeltaDraws draws = draw_delta_pairs(scenario, d.n_trials, d.threads);

  std::vector<double> h0_sorted = draws.h0;
  std::sort(h0_sorted.begin(), h0_sorted.end());
  std::vector<double> thresholds;
  thresholds.reserve(pf_grid.size());
  for (const double pf : pf_grid) thresholds.push_back(empirical_threshold(h0_sorted, pf));
  std::sort(thresholds.begin(), thresholds.end());
  RocCurve empirical = roc_from_draws(draws, thresholds);

  const double target_threshold = empirical_threshold(h0_sorted, target_pf);
  const HypothesisStats calibrated =
      derive_stats(scenario, VarianceMode::OracleCalibrated, {d.n_trials, d.threads});

  ExperimentArm arm{
      .state = state,
      .scenario = scenario,
      .empirical = std::move(empirical),
      .empirical_pf_at_target = exceedance_fraction(draws.h0, target_threshold),
      .empirical_pd_at_target = exceedance_fraction(draws.h1, target_threshold),
      .calibrated = calibrated,
      .analytic_calibrated = analytic_roc(calibrated, pf_grid.size()),
      .calibrated_pd_at_target =
          detection_probability(threshold_for_target_pf(target_pf, calibrated), calibrated),
      .paper_pd_at_target = std::nullopt,
      .paper_status = "ok",
  };
  try {
    const HypothesisStats paper = derive_stats(scenario, VarianceMode::PaperExact);
    arm.paper_pd_at_target = detection_probability(threshold_for_target_pf(target_pf, paper), paper);
  } catch (const Error& e) {
    arm.paper_status = std::string(to_string(e.kind()));
  }
  return arm;
}

std::string format_optional(const std::optional<double>& v) {
  return v ? fmt::format("{:.6f}", *v) : std::string("n/a");
}

}  // namespace

ScenarioConfig experiment_scenario(const ExperimentDescriptor& d, RisState state) {
  check_name(d.name);
  using D = ExperimentDefaults;
  const double var_a = d.var_a.value_or(D::kVarA);
  double var_e = var_a;
  if (is_experiment1(d.name)) {
    var_e = d.var_e.value_or(var_a * D::kExperiment1EveRatio);
  } else if (d.var_e && *d.var_e != var_a) {
    throw Error(ErrorKind::DomainError, "var_e", "experiment2 places Eve at Alice's position: var_e = var_a");
  }
  const ChannelParams params(d.var_ar.value_or(D::kVarAr), d.var_rb.value_or(D::kVarRb), var_a, var_e,
                             d.noise_var.value_or(D::kNoiseVar));
  const std::uint64_t arm_seed =
      RandomStream(d.seed).substream(stream_tag::kExperiment).substream(state == RisState::On ? 1 : 0).key();
  return ScenarioConfig(d.samples_per_block.value_or(D::kSamplesPerBlock), 1, FadingMode::PerSample, arm_seed,
                        params, coherent_config(d.n_elements.value_or(D::kElements)).with_state(state));
}

ExperimentReport run_experiment_suite(const ExperimentDescriptor& d) {
  check_name(d.name);
  const std::vector<double> grid = log_pf_grid(d.grid_points);
  const double target = ExperimentDefaults::kTargetPf;
  return ExperimentReport{
      .name = d.name,
      .description = is_experiment1(d.name) ? "Alice and Eve at different locations (var_e < var_a)"
                                            : "Alice and Eve at the same location (var_e = var_a)",
      .seed = d.seed,
      .n_trials = d.n_trials,
      .target_pf = target,
      .pf_grid = grid,
      .off = run_arm(d, RisState::Off, grid, target),
      .on = run_arm(d, RisState::On, grid, target),
  };
}

std::string render_experiment_report(const ExperimentReport& r) {
  std::string out;
  const auto& sc = r.on.scenario;
  const auto& ch = sc.channel();
  out += fmt::format("# {}: {}\n", r.name, r.description);
  out += fmt::format("seed = {}\ntrials_per_hypothesis = {}\n", r.seed, r.n_trials);
  out += fmt::format("samples_per_block = {}\nn_elements = {}\n", sc.samples_per_block(), sc.ris().n_elements());
  out += fmt::format("var_ar = {}\nvar_rb = {}\nvar_a = {}\nvar_e = {}\nnoise_var = {}\n", ch.var_ar(),
                     ch.var_rb(), ch.var_a(), ch.var_e(), ch.noise_var());
  out += fmt::format("target_pf = {}\n\n", r.target_pf);

  for (const ExperimentArm* arm : {&r.off, &r.on}) {
    const auto state = to_string(arm->state);
    out += fmt::format("[ris {}]\n", state);
    out += fmt::format("  sigma_h_sq              = {:.6f}\n", arm->calibrated.sigma_h_sq());
    out += fmt::format("  mu_delta1               = {:.6f}\n", arm->calibrated.dt_h1().mean());
    out += fmt::format("  sigma_delta0 (calib.)   = {:.6f}\n", arm->calibrated.dt_h0().stddev());
    out += fmt::format("  sigma_delta1 (calib.)   = {:.6f}\n", arm->calibrated.dt_h1().stddev());
    out += fmt::format("  empirical P_f achieved  = {:.6f}\n", arm->empirical_pf_at_target);
    out += fmt::format("  empirical P_d @ P_f=0.1 = {:.6f}\n", arm->empirical_pd_at_target);
    out += fmt::format("  calibrated P_d @ 0.1    = {:.6f}\n", arm->calibrated_pd_at_target);
    out += fmt::format("  paper-exact P_d @ 0.1   = {} ({})\n\n", format_optional(arm->paper_pd_at_target),
                       arm->paper_status);
  }
  out += fmt::format("dominance gap (on - off) @ P_f=0.1 = {:.6f}\n\n", r.dominance_gap());

  out += "## csv:summary\n";
  out += "ris_state,empirical_pf,empirical_pd,calibrated_pd,paper_pd,mu_delta1,var_delta0,var_delta1\n";
  for (const ExperimentArm* arm : {&r.off, &r.on}) {
    out += fmt::format("{},{},{},{},{},{},{},{}\n", to_string(arm->state), arm->empirical_pf_at_target,
                       arm->empirical_pd_at_target, arm->calibrated_pd_at_target,
                       arm->paper_pd_at_target ? fmt::format("{}", *arm->paper_pd_at_target) : std::string(),
                       arm->calibrated.dt_h1().mean(), arm->calibrated.dt_h0().variance(),
                       arm->calibrated.dt_h1().variance());
  }
  for (const ExperimentArm* arm : {&r.off, &r.on}) {
    out += fmt::format("\n## csv:roc_ris_{}\n", to_string(arm->state));
    out += roc_csv({arm->empirical, arm->analytic_calibrated});
  }
  return out;
}

}  // namespace ris_sei
