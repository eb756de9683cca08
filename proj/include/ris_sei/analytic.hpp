#pragma once

#include <array>
#include <cstddef>
#include <optional>

#include "ris_sei/roc.hpp"
#include "ris_sei/types.hpp"

namespace ris_sei {

enum class VarianceMode {
  PaperExact,        // closed-form variances of the Gaussian approximation, as published
  OracleCalibrated,  // same means, variances estimated by Monte-Carlo
};

std::string_view to_string(VarianceMode mode);

/// Gaussian approximations of the RSS T and of the test statistic dT under
/// both hypotheses. dt_h0 always has zero mean.
class HypothesisStats {
 public:
  HypothesisStats(GaussianStat t_h0, GaussianStat t_h1, GaussianStat dt_h0, GaussianStat dt_h1,
                  double sigma_h_sq, VarianceMode mode);

  /// Statistics known only at the dT level (T-level moments left empty).
  static HypothesisStats for_delta(double var_dt0, double mean_dt1, double var_dt1,
                                   VarianceMode mode = VarianceMode::PaperExact);

  const std::optional<GaussianStat>& t_h0() const noexcept { return t_h0_; }
  const std::optional<GaussianStat>& t_h1() const noexcept { return t_h1_; }
  const GaussianStat& dt_h0() const noexcept { return dt_h0_; }
  const GaussianStat& dt_h1() const noexcept { return dt_h1_; }
  double sigma_h_sq() const noexcept { return sigma_h_sq_; }
  VarianceMode mode() const noexcept { return mode_; }

 private:
  HypothesisStats(std::optional<GaussianStat> t_h0, std::optional<GaussianStat> t_h1, GaussianStat dt_h0,
                  GaussianStat dt_h1, double sigma_h_sq, VarianceMode mode);

  std::optional<GaussianStat> t_h0_;
  std::optional<GaussianStat> t_h1_;
  GaussianStat dt_h0_;
  GaussianStat dt_h1_;
  double sigma_h_sq_;
  VarianceMode mode_;
};

/// Variance of the equivalent channel: sum_n alpha_n^2 var_rb var_ar + var_a with
/// the RIS on, var_a with it off. Phases do not enter.
double lemma1_variance(const RisConfig& ris, const ChannelParams& params);

/// Published closed forms given the equivalent-channel variance. Throws
/// NegativeVariance naming the first variance that evaluates below zero.
HypothesisStats paper_exact_stats(double sigma_h_sq, double var_e, double noise_var,
                                  std::size_t samples_per_block);

/// Var(T) under per-sample fading from the exact fourth moment of the received
/// samples: (mu^2 + 2 (var_ar var_rb)^2 sum_n alpha_n^4) / L under H0 with the
/// RIS on, mu^2 / L otherwise. Independent of the Gaussian approximation.
double rss_variance_fourth_moment(const ScenarioConfig& scenario, Hypothesis hypothesis);

struct CalibrationOptions {
  std::size_t n_trials = 100000;
  unsigned threads = 0;
};

/// PaperExact evaluates the closed forms. OracleCalibrated keeps the closed-form
/// means and replaces all four variances with sample variances over
/// `calibration.n_trials` simulated trials drawn from the scenario seed's
/// calibration substream.
HypothesisStats derive_stats(const ScenarioConfig& scenario, VarianceMode mode,
                             const CalibrationOptions& calibration = {});

/// Standard Gaussian tail probability.
double q_function(double s);

/// Inverse of q_function on (0,1); DomainError outside.
double q_inverse(double p);

double detection_probability(double threshold, const HypothesisStats& stats);
double false_alarm_probability(double threshold, const HypothesisStats& stats);
double threshold_for_target_pf(double p_false_alarm, const HypothesisStats& stats);

/// P_f(threshold) + 1 - P_d(threshold).
double overall_error(double threshold, const HypothesisStats& stats);

struct OperatingPoint {
  double threshold = 0.0;
  double p_detection = 0.0;
  double p_false_alarm = 0.0;
  double p_error_total = 0.0;
};

OperatingPoint operating_point(double threshold, const HypothesisStats& stats);

struct OptimalThreshold {
  enum class Method { ClosedForm, EqualVariance, Numeric };
  double value = 0.0;
  Method method = Method::ClosedForm;
};

/// Both thresholds where the dT densities under H0 and H1 cross, i.e. the
/// stationary points of overall_error. Index 0 is the root with the + sign on
/// the square root. Requires unequal variances and a nonnegative discriminant.
std::array<double, 2> likelihood_crossings(const HypothesisStats& stats);

/// Threshold minimising overall_error: the crossing with the smaller error, the
/// midpoint for equal variances, or a grid plus golden-section search when the
/// discriminant is negative.
OptimalThreshold optimal_threshold(const HypothesisStats& stats);

/// Analytic ROC over log_pf_grid(n_points) false-alarm targets.
RocCurve analytic_roc(const HypothesisStats& stats, std::size_t n_points);

}  // namespace ris_sei
