#include "ris_sei/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>
#include <fmt/format.h>

#include "ris_sei/errors.hpp"
#include "ris_sei/monte_carlo.hpp"

namespace ris_sei {

namespace {

GaussianStat checked(const char* name, double mean, double variance) {
  if (variance < 0.0) {
    throw Error(ErrorKind::NegativeVariance, name,
                fmt::format("closed form evaluates to {} for these parameters", variance));
  }
  return GaussianStat(mean, variance);
}

double sample_variance(const std::vector<double>& values) { return compute_moments(values).variance; }

double delta_sigma(const GaussianStat& s, const char* name) {
  const double sigma = s.stddev();
  if (!(sigma > 0.0)) throw Error(ErrorKind::DegenerateDistribution, name, "zero variance");
  return sigma;
}

// Minimises overall_error on [lo, hi] with a coarse grid then golden-section refinement.
double minimise_error_numerically(const HypothesisStats& stats, double lo, double hi) {
  constexpr int kGrid = 2000;
  const double step = (hi - lo) / kGrid;
  int best = 0;
  double best_err = overall_error(lo, stats);
  for (int i = 1; i <= kGrid; ++i) {
    const double e = overall_error(lo + i * step, stats);
    if (e < best_err) {
      best_err = e;
      best = i;
    }
  }
  double a = lo + std::max(best - 1, 0) * step;
  double b = lo + std::min(best + 1, kGrid) * step;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = overall_error(c, stats);
  double fd = overall_error(d, stats);
  for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = overall_error(c, stats);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = overall_error(d, stats);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

std::string_view to_string(VarianceMode mode) {
  return mode == VarianceMode::PaperExact ? "paper_exact" : "oracle_calibrated";
}

std::string_view to_string(RocSource source) {
  return source == RocSource::Analytic ? "analytic" : "empirical";
}

std::vector<double> log_pf_grid(std::size_t n_points) {
  if (n_points < 2) throw Error(ErrorKind::DomainError, "n_points", "need at least two points");
  const double lo = std::log10(1e-4);
  const double hi = std::log10(1.0 - 1e-4);
  std::vector<double> grid(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    grid[i] = std::pow(10.0, lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_points - 1));
  }
  return grid;
}

HypothesisStats::HypothesisStats(GaussianStat t_h0, GaussianStat t_h1, GaussianStat dt_h0,
                                 GaussianStat dt_h1, double sigma_h_sq, VarianceMode mode)
    : HypothesisStats(std::optional(t_h0), std::optional(t_h1), dt_h0, dt_h1, sigma_h_sq, mode) {}

HypothesisStats::HypothesisStats(std::optional<GaussianStat> t_h0, std::optional<GaussianStat> t_h1,
                                 GaussianStat dt_h0, GaussianStat dt_h1, double sigma_h_sq,
                                 VarianceMode mode)
    : t_h0_(t_h0), t_h1_(t_h1), dt_h0_(dt_h0), dt_h1_(dt_h1), sigma_h_sq_(sigma_h_sq), mode_(mode) {
  if (dt_h0_.mean() != 0.0) throw Error(ErrorKind::DomainError, "dt_h0", "mean must be zero");
  if (!(sigma_h_sq_ >= 0.0) || !std::isfinite(sigma_h_sq_)) {
    throw Error(ErrorKind::OutOfRange, "sigma_h_sq", "must be finite and >= 0");
  }
}

HypothesisStats HypothesisStats::for_delta(double var_dt0, double mean_dt1, double var_dt1,
                                           VarianceMode mode) {
  return HypothesisStats(std::nullopt, std::nullopt, GaussianStat(0.0, var_dt0),
                         GaussianStat(mean_dt1, var_dt1), 0.0, mode);
}

double lemma1_variance(const RisConfig& ris, const ChannelParams& params) {
  if (!ris.is_on()) return params.var_a();
  double gain = 0.0;
  for (const double a : ris.amplitudes()) gain += a * a;
  return gain * params.var_rb() * params.var_ar() + params.var_a();
}

HypothesisStats paper_exact_stats(double sigma_h_sq, double var_e, double noise_var,
                                  std::size_t samples_per_block) {
  const double L = static_cast<double>(samples_per_block);
  const double sh4 = sigma_h_sq * sigma_h_sq;
  const double se4 = var_e * var_e;
  const double n4 = noise_var * noise_var;

  const double mu0 = sigma_h_sq + noise_var;
  const double mu1 = var_e + noise_var;
  const double core0 = 2.0 * sh4 + 2.0 * n4 - mu0 * mu0;
  const double core1 = 2.0 * se4 + 2.0 * n4 - mu1 * mu1;
  const double var0 = core0 / L;
  const double var1 = core1 / L;
  const double var_dt1 = (2.0 * sh4 + 2.0 * se4 + 4.0 * n4 - mu0 * mu0 - mu1 * mu1) / L;

  return HypothesisStats(checked("t_h0", mu0, var0), checked("t_h1", mu1, var1),
                         checked("dt_h0", 0.0, 2.0 * var0), checked("dt_h1", sigma_h_sq - var_e, var_dt1),
                         sigma_h_sq, VarianceMode::PaperExact);
}

double rss_variance_fourth_moment(const ScenarioConfig& scenario, Hypothesis hypothesis) {
  const ChannelParams& p = scenario.channel();
  const double L = static_cast<double>(scenario.samples_per_block());
  if (hypothesis == Hypothesis::Spoofing) {
    const double mu1 = p.var_e() + p.noise_var();
    return mu1 * mu1 / L;
  }
  const double mu0 = lemma1_variance(scenario.ris(), p) + p.noise_var();
  double excess = 0.0;
  if (scenario.ris().is_on()) {
    const double s = p.var_ar() * p.var_rb();
    double a4 = 0.0;
    for (const double a : scenario.ris().amplitudes()) a4 += a * a * a * a;
    excess = 2.0 * s * s * a4;
  }
  return (mu0 * mu0 + excess) / L;
}

HypothesisStats derive_stats(const ScenarioConfig& scenario, VarianceMode mode,
                             const CalibrationOptions& calibration) {
  const ChannelParams& p = scenario.channel();
  const double sigma_h_sq = lemma1_variance(scenario.ris(), p);
  if (mode == VarianceMode::PaperExact) {
    return paper_exact_stats(sigma_h_sq, p.var_e(), p.noise_var(), scenario.samples_per_block());
  }

  if (calibration.n_trials < 2) {
    throw Error(ErrorKind::InsufficientTrials, "n_trials", "calibration needs at least two trials");
  }
  const RandomStream base = RandomStream(scenario.seed()).substream(stream_tag::kCalibration);
  const std::size_t n = calibration.n_trials;
  const unsigned threads = calibration.threads;
  const double var_t0 = sample_variance(
      sample_rss(scenario, Hypothesis::Legitimate, n, base.substream(stream_tag::kRssH0), threads));
  const double var_t1 = sample_variance(
      sample_rss(scenario, Hypothesis::Spoofing, n, base.substream(stream_tag::kRssH1), threads));
  const double var_dt0 = sample_variance(
      sample_delta(scenario, Hypothesis::Legitimate, n, base.substream(stream_tag::kDeltaH0), threads));
  const double var_dt1 = sample_variance(
      sample_delta(scenario, Hypothesis::Spoofing, n, base.substream(stream_tag::kDeltaH1), threads));

  const double mu0 = sigma_h_sq + p.noise_var();
  const double mu1 = p.var_e() + p.noise_var();
  return HypothesisStats(GaussianStat(mu0, var_t0), GaussianStat(mu1, var_t1), GaussianStat(0.0, var_dt0),
                         GaussianStat(sigma_h_sq - p.var_e(), var_dt1), sigma_h_sq,
                         VarianceMode::OracleCalibrated);
}

double q_function(double s) { return 0.5 * std::erfc(s / std::numbers::sqrt2); }

double q_inverse(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorKind::DomainError, "p", fmt::format("{} is outside (0,1)", p));
  }
  if (p == 0.5) return 0.0;
  return std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double detection_probability(double threshold, const HypothesisStats& stats) {
  const double sigma = delta_sigma(stats.dt_h1(), "dt_h1");
  return q_function((threshold - stats.dt_h1().mean()) / sigma);
}

double false_alarm_probability(double threshold, const HypothesisStats& stats) {
  const double sigma = delta_sigma(stats.dt_h0(), "dt_h0");
  return q_function((threshold - stats.dt_h0().mean()) / sigma);
}

double threshold_for_target_pf(double p_false_alarm, const HypothesisStats& stats) {
  const double sigma = delta_sigma(stats.dt_h0(), "dt_h0");
  return q_inverse(p_false_alarm) * sigma + stats.dt_h0().mean();
}

double overall_error(double threshold, const HypothesisStats& stats) {
  return false_alarm_probability(threshold, stats) + (1.0 - detection_probability(threshold, stats));
}

OperatingPoint operating_point(double threshold, const HypothesisStats& stats) {
  OperatingPoint op;
  op.threshold = threshold;
  op.p_detection = detection_probability(threshold, stats);
  op.p_false_alarm = false_alarm_probability(threshold, stats);
  op.p_error_total = op.p_false_alarm + (1.0 - op.p_detection);
  return op;
}

std::array<double, 2> likelihood_crossings(const HypothesisStats& stats) {
  const double s0 = stats.dt_h0().variance();
  const double s1 = stats.dt_h1().variance();
  const double sd0 = delta_sigma(stats.dt_h0(), "dt_h0");
  const double sd1 = delta_sigma(stats.dt_h1(), "dt_h1");
  if (s0 == s1) throw Error(ErrorKind::DomainError, "variances", "equal variances cross only once");
  const double m0 = stats.dt_h0().mean();
  const double d = stats.dt_h1().mean() - m0;
  const double log_ratio = std::log(sd0 / sd1);
  const double disc = s0 * s1 * d * d + 2.0 * s0 * s1 * (s0 - s1) * log_ratio;
  if (disc < 0.0) throw Error(ErrorKind::DomainError, "discriminant", fmt::format("{} < 0", disc));
  const double root = std::sqrt(disc);
  // Both roots of (s0 - s1) x^2 - 2 s0 d x + s0 d^2 - 2 s0 s1 log_ratio = 0, each
  // evaluated in the form that avoids cancellation.
  const double c = s0 * d * d - 2.0 * s0 * s1 * log_ratio;
  const double plus_num = s0 * d + root;
  const double minus_num = s0 * d - root;
  const double plus = (d >= 0.0 || plus_num == 0.0) ? plus_num / (s0 - s1) : c / minus_num;
  const double minus = (d >= 0.0 && plus_num != 0.0) ? c / plus_num : minus_num / (s0 - s1);
  return {m0 + plus, m0 + minus};
}

OptimalThreshold optimal_threshold(const HypothesisStats& stats) {
  const double s0 = stats.dt_h0().variance();
  const double s1 = stats.dt_h1().variance();
  const double sd0 = delta_sigma(stats.dt_h0(), "dt_h0");
  const double sd1 = delta_sigma(stats.dt_h1(), "dt_h1");
  const double m0 = stats.dt_h0().mean();
  const double m1 = stats.dt_h1().mean();

  if (std::abs(s0 - s1) <= 1e-12 * std::max(s0, s1)) {
    return {m0 + 0.5 * (m1 - m0), OptimalThreshold::Method::EqualVariance};
  }
  const double d = m1 - m0;
  const double disc = s0 * s1 * d * d + 2.0 * s0 * s1 * (s0 - s1) * std::log(sd0 / sd1);
  if (disc < 0.0) {
    const double lo = std::min(m0 - 6.0 * sd0, m1 - 6.0 * sd1);
    const double hi = std::max(m0 + 6.0 * sd0, m1 + 6.0 * sd1);
    return {minimise_error_numerically(stats, lo, hi), OptimalThreshold::Method::Numeric};
  }
  const auto roots = likelihood_crossings(stats);
  const double best = overall_error(roots[0], stats) <= overall_error(roots[1], stats) ? roots[0] : roots[1];
  return {best, OptimalThreshold::Method::ClosedForm};
}

RocCurve analytic_roc(const HypothesisStats& stats, std::size_t n_points) {
  RocCurve curve;
  curve.source = RocSource::Analytic;
  for (const double pf : log_pf_grid(n_points)) {
    const double threshold = threshold_for_target_pf(pf, stats);
    curve.points.push_back({false_alarm_probability(threshold, stats),
                            detection_probability(threshold, stats), threshold});
  }
  return curve;
}

}  // namespace ris_sei
