#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ris_sei/analytic.hpp"
#include "ris_sei/roc.hpp"
#include "ris_sei/types.hpp"

namespace ris_sei {

/// Simulated counterparts of the two prototype experiments:
///   experiment1  Alice and Eve at different locations, var_e = var_a / 4 by default
///   experiment2  Alice and Eve at the same location, var_e = var_a exactly
/// Distances are mapped to variances by these conventions only.
struct ExperimentDefaults {
  static constexpr std::size_t kSamplesPerBlock = 50;
  static constexpr std::size_t kElements = 16;
  static constexpr double kVarAr = 0.25;
  static constexpr double kVarRb = 0.25;
  static constexpr double kVarA = 1.0;
  static constexpr double kNoiseVar = 0.5;
  static constexpr double kExperiment1EveRatio = 0.25;
  static constexpr std::size_t kTrials = 100000;
  static constexpr std::size_t kGridPoints = 20;
  static constexpr double kTargetPf = 0.1;
};

struct ExperimentDescriptor {
  std::string name;  // "experiment1" or "experiment2"
  std::uint64_t seed = 0;
  std::size_t n_trials = ExperimentDefaults::kTrials;
  std::size_t grid_points = ExperimentDefaults::kGridPoints;
  unsigned threads = 0;
  std::optional<std::size_t> samples_per_block;
  std::optional<std::size_t> n_elements;
  std::optional<double> var_ar;
  std::optional<double> var_rb;
  std::optional<double> var_a;
  std::optional<double> var_e;  // experiment1 only
  std::optional<double> noise_var;
};

/// Scenario an experiment runs for one RIS state (coherent RIS, per-sample fading).
/// Throws UnknownExperiment for any other name.
ScenarioConfig experiment_scenario(const ExperimentDescriptor& descriptor, RisState state);

struct ExperimentArm {
  RisState state = RisState::Off;
  ScenarioConfig scenario;
  RocCurve empirical;                  // thresholds at empirical H0 quantiles of the P_f grid
  double empirical_pf_at_target = 0.0;
  double empirical_pd_at_target = 0.0;
  HypothesisStats calibrated;
  RocCurve analytic_calibrated;
  double calibrated_pd_at_target = 0.0;
  std::optional<double> paper_pd_at_target;  // empty when the closed form is degenerate
  std::string paper_status = "ok";
};

struct ExperimentReport {
  std::string name;
  std::string description;
  std::uint64_t seed = 0;
  std::size_t n_trials = 0;
  double target_pf = ExperimentDefaults::kTargetPf;
  std::vector<double> pf_grid;
  ExperimentArm off;
  ExperimentArm on;

  double dominance_gap() const { return on.empirical_pd_at_target - off.empirical_pd_at_target; }
};

ExperimentReport run_experiment_suite(const ExperimentDescriptor& descriptor);

/// Text summary followed by `## csv:` sections; byte-identical for equal inputs.
std::string render_experiment_report(const ExperimentReport& report);

}  // namespace ris_sei
