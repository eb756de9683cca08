#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ris_sei/monte_carlo.hpp"
#include "ris_sei/ris_optimizer.hpp"
#include "ris_sei/types.hpp"

namespace ris_sei {

struct ValidationOptions {
  std::uint64_t seed = 1;
  std::size_t trials = 20000;            // per Monte-Carlo estimate
  std::size_t variance_trials = 100000;  // per seed in the variance adjudication
  unsigned threads = 0;
};

struct LemmaCheck {
  std::size_t n_elements = 0;
  double var_ar = 0.0;
  double var_rb = 0.0;
  double var_a = 0.0;
  double analytic = 0.0;
  double empirical = 0.0;
  double std_error = 0.0;
  double gap = 0.0;  // |empirical - analytic| / std_error
};

struct MeanCheck {
  std::string statistic;
  double analytic = 0.0;
  double empirical = 0.0;
  double std_error = 0.0;
  double gap = 0.0;
};

/// Empirical Var(T) against the published closed form, mu0^2 / L and the exact
/// fourth-moment value, estimated independently under two seeds.
struct VarianceAdjudication {
  std::string label;
  std::size_t n_elements = 0;
  std::size_t samples_per_block = 0;
  double sigma_h_sq = 0.0;
  double noise_var = 0.0;
  double empirical_seed_a = 0.0;
  double empirical_seed_b = 0.0;
  double paper_exact = 0.0;
  double mu0_sq_over_l = 0.0;
  double fourth_moment = 0.0;

  double empirical() const { return 0.5 * (empirical_seed_a + empirical_seed_b); }
  double seed_relative_difference() const;
  std::optional<double> ratio_to_paper() const;
  double ratio_to_mu0_sq() const { return empirical() / mu0_sq_over_l; }
  double ratio_to_fourth_moment() const { return empirical() / fourth_moment; }
};

struct GaussianityEntry {
  std::string label;
  std::optional<GaussianityCheck> check;  // empty when the target could not be formed
  std::string status = "ok";
  bool failure_permitted = false;
};

struct ValidationReport {
  ValidationOptions options;
  std::vector<LemmaCheck> lemma;
  std::vector<MeanCheck> means;
  std::vector<VarianceAdjudication> variances;
  std::vector<GaussianityEntry> gaussianity;
  SweepResult sweep_paper;
  SweepResult sweep_calibrated;
  std::optional<std::size_t> first_n_above_0_9_paper;
  std::optional<std::size_t> first_n_above_0_9_calibrated;
};

/// The ten parameter sets of the variance adjudication.
std::vector<ScenarioConfig> adjudication_scenarios();

VarianceAdjudication adjudicate_variance(const ScenarioConfig& scenario, std::uint64_t seed_a,
                                         std::uint64_t seed_b, std::size_t n_trials, unsigned threads = 0);

ValidationReport run_validation(const ValidationOptions& options);

/// Deterministic text rendering with `## csv:` sections.
std::string render_validation_report(const ValidationReport& report);

}  // namespace ris_sei
