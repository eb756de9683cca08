#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ris_sei/channel.hpp"
#include "ris_sei/random.hpp"
#include "ris_sei/roc.hpp"
#include "ris_sei/types.hpp"

namespace ris_sei {

// Trial i of every sampler below draws from `base.substream(i)` only, and
// results are reduced in trial order, so the output does not depend on the
// thread count. `threads == 0` uses the hardware concurrency.

/// RSS of `n_trials` independent blocks.
std::vector<double> sample_rss(const ScenarioConfig& scenario, Hypothesis hypothesis, std::size_t n_trials,
                               const RandomStream& base, unsigned threads = 0);

/// dT of `n_trials` independent trials: a fresh H0 reference block
/// (substream 0 of the trial) minus an observation block under `hypothesis`
/// (substream 1).
std::vector<double> sample_delta(const ScenarioConfig& scenario, Hypothesis hypothesis,
                                 std::size_t n_trials, const RandomStream& base, unsigned threads = 0);

/// Equivalent-channel draws h_ARB.
std::vector<Complex> sample_equivalent_channel(const RisConfig& ris, const ChannelParams& params,
                                               std::size_t n_draws, const RandomStream& base,
                                               unsigned threads = 0);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double std_error_mean = 0.0;
};

/// Compensated two-pass moments in index order. Needs at least two values.
Moments compute_moments(std::span<const double> values);

struct HistogramBin {
  double left_edge = 0.0;
  std::size_t count = 0;
};

struct EmpiricalSummary {
  std::size_t n_trials = 0;
  double mean = 0.0;
  double variance = 0.0;
  double std_error_mean = 0.0;
  std::vector<HistogramBin> histogram;  // Freedman-Diaconis bins
  double bin_width = 0.0;
  std::vector<double> sorted_samples;   // kept for distribution-distance checks
};

/// Moments plus a Freedman-Diaconis histogram of `values`.
EmpiricalSummary summarize(std::vector<double> values);

/// RSS distribution over `n_trials` blocks from the scenario seed. Needs n_trials >= 100.
EmpiricalSummary empirical_t_distribution(const ScenarioConfig& scenario, Hypothesis hypothesis,
                                          std::size_t n_trials, unsigned threads = 0);

/// dT distribution over `n_trials` trials from the scenario seed. Needs n_trials >= 100.
EmpiricalSummary empirical_delta_distribution(const ScenarioConfig& scenario, Hypothesis hypothesis,
                                              std::size_t n_trials, unsigned threads = 0);

/// dT draws under both hypotheses, shared across every threshold of a sweep.
struct DeltaDraws {
  std::vector<double> h0;
  std::vector<double> h1;
};

DeltaDraws draw_delta_pairs(const ScenarioConfig& scenario, std::size_t n_trials, unsigned threads = 0);

/// Empirical ROC from shared draws; thresholds must be sorted ascending.
RocCurve roc_from_draws(const DeltaDraws& draws, std::span<const double> thresholds);

/// Empirical ROC with `n_trials` dT draws per hypothesis (n_trials >= 1000).
RocCurve empirical_roc(const ScenarioConfig& scenario, std::span<const double> thresholds,
                       std::size_t n_trials, unsigned threads = 0);

/// Threshold whose empirical exceedance fraction over `samples` is
/// round(p_false_alarm * n) / n. `samples` must be sorted ascending.
double empirical_threshold(std::span<const double> sorted_samples, double p_false_alarm);

/// Fraction of `samples` strictly above `threshold`.
double exceedance_fraction(std::span<const double> samples, double threshold);

struct GaussianityCheck {
  double mean_gap = 0.0;        // |mean - target| / std_error_mean
  double variance_ratio = 0.0;  // empirical / target
  double cdf_gap = 0.0;         // sup |F_emp - F_target|
  bool mean_ok = false;         // mean_gap < kMeanGapTolerance
  bool cdf_ok = false;          // cdf_gap < kCdfGapTolerance

  static constexpr double kMeanGapTolerance = 4.0;
  static constexpr double kCdfGapTolerance = 0.02;
};

/// Compares an empirical summary with a Gaussian target. InsufficientTrials
/// below 10^4 trials.
GaussianityCheck validate_gaussianity(const EmpiricalSummary& summary, const GaussianStat& target);

}  // namespace ris_sei
