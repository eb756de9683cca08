#include "ris_sei/monte_carlo.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "parallel.hpp"
#include "ris_sei/analytic.hpp"
#include "ris_sei/detector.hpp"
#include "ris_sei/errors.hpp"

namespace ris_sei {

namespace {

// Neumaier summation in index order.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    carry_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

double block_rss(const ScenarioConfig& scenario, Hypothesis hypothesis, RandomStream rng) {
  return rss(simulate_block(scenario, hypothesis, rng)).value;
}

void require_trials(std::size_t n, std::size_t minimum, const char* what) {
  if (n < minimum) {
    throw Error(ErrorKind::InsufficientTrials, what, fmt::format("{} trials, need at least {}", n, minimum));
  }
}

// Interpolated quantile of sorted data (type 7).
double quantile(std::span<const double> sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::vector<double> sample_rss(const ScenarioConfig& scenario, Hypothesis hypothesis, std::size_t n_trials,
                               const RandomStream& base, unsigned threads) {
  std::vector<double> out(n_trials);
  detail::parallel_for(n_trials, threads,
                       [&](std::size_t i) { out[i] = block_rss(scenario, hypothesis, base.substream(i)); });
  return out;
}

std::vector<double> sample_delta(const ScenarioConfig& scenario, Hypothesis hypothesis,
                                 std::size_t n_trials, const RandomStream& base, unsigned threads) {
  std::vector<double> out(n_trials);
  detail::parallel_for(n_trials, threads, [&](std::size_t i) {
    const RandomStream trial = base.substream(i);
    const double reference = block_rss(scenario, Hypothesis::Legitimate, trial.substream(0));
    const double observation = block_rss(scenario, hypothesis, trial.substream(1));
    out[i] = delta_t({reference, scenario.samples_per_block()}, {observation, scenario.samples_per_block()})
                 .delta;
  });
  return out;
}

std::vector<Complex> sample_equivalent_channel(const RisConfig& ris, const ChannelParams& params,
                                               std::size_t n_draws, const RandomStream& base,
                                               unsigned threads) {
  std::vector<Complex> out(n_draws);
  detail::parallel_for(n_draws, threads, [&](std::size_t i) {
    RandomStream rng = base.substream(i);
    out[i] = equivalent_channel(draw_realization(ris, params, rng), ris);
  });
  return out;
}

Moments compute_moments(std::span<const double> values) {
  require_trials(values.size(), 2, "values");
  const double n = static_cast<double>(values.size());
  CompensatedSum sum;
  for (const double v : values) sum.add(v);
  const double mean = sum.value() / n;
  CompensatedSum sq;
  CompensatedSum dev;
  for (const double v : values) {
    const double d = v - mean;
    sq.add(d * d);
    dev.add(d);
  }
  // Corrected two-pass formula.
  const double variance = std::max(0.0, (sq.value() - dev.value() * dev.value() / n) / (n - 1.0));
  return {mean, variance, std::sqrt(variance / n)};
}

EmpiricalSummary summarize(std::vector<double> values) {
  const Moments m = compute_moments(values);
  EmpiricalSummary s;
  s.n_trials = values.size();
  s.mean = m.mean;
  s.variance = m.variance;
  s.std_error_mean = m.std_error_mean;

  std::sort(values.begin(), values.end());
  const double lo = values.front();
  const double hi = values.back();
  const double iqr = quantile(values, 0.75) - quantile(values, 0.25);
  double width = 2.0 * iqr / std::cbrt(static_cast<double>(values.size()));
  constexpr std::size_t kMaxBins = 10000;
  std::size_t bins = 1;
  if (width > 0.0 && hi > lo) {
    bins = std::min<std::size_t>(kMaxBins, static_cast<std::size_t>(std::ceil((hi - lo) / width)));
    bins = std::max<std::size_t>(bins, 1);
    width = (hi - lo) / static_cast<double>(bins);
  } else {
    width = hi > lo ? hi - lo : 1.0;
  }
  s.bin_width = width;
  s.histogram.resize(bins);
  for (std::size_t b = 0; b < bins; ++b) s.histogram[b].left_edge = lo + static_cast<double>(b) * width;
  for (const double v : values) {
    auto b = static_cast<std::size_t>((v - lo) / width);
    s.histogram[std::min(b, bins - 1)].count++;
  }
  s.sorted_samples = std::move(values);
  return s;
}

EmpiricalSummary empirical_t_distribution(const ScenarioConfig& scenario, Hypothesis hypothesis,
                                          std::size_t n_trials, unsigned threads) {
  require_trials(n_trials, 100, "n_trials");
  const auto tag = hypothesis == Hypothesis::Legitimate ? stream_tag::kRssH0 : stream_tag::kRssH1;
  return summarize(
      sample_rss(scenario, hypothesis, n_trials, RandomStream(scenario.seed()).substream(tag), threads));
}

EmpiricalSummary empirical_delta_distribution(const ScenarioConfig& scenario, Hypothesis hypothesis,
                                              std::size_t n_trials, unsigned threads) {
  require_trials(n_trials, 100, "n_trials");
  const auto tag = hypothesis == Hypothesis::Legitimate ? stream_tag::kDeltaH0 : stream_tag::kDeltaH1;
  return summarize(
      sample_delta(scenario, hypothesis, n_trials, RandomStream(scenario.seed()).substream(tag), threads));
}

DeltaDraws draw_delta_pairs(const ScenarioConfig& scenario, std::size_t n_trials, unsigned threads) {
  const RandomStream root(scenario.seed());
  return {sample_delta(scenario, Hypothesis::Legitimate, n_trials, root.substream(stream_tag::kDeltaH0), threads),
          sample_delta(scenario, Hypothesis::Spoofing, n_trials, root.substream(stream_tag::kDeltaH1), threads)};
}

double exceedance_fraction(std::span<const double> samples, double threshold) {
  const auto above = std::count_if(samples.begin(), samples.end(), [&](double v) { return v > threshold; });
  return static_cast<double>(above) / static_cast<double>(samples.size());
}

RocCurve roc_from_draws(const DeltaDraws& draws, std::span<const double> thresholds) {
  if (thresholds.empty()) throw Error(ErrorKind::DomainError, "thresholds", "empty threshold list");
  if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
    throw Error(ErrorKind::DomainError, "thresholds", "must be sorted ascending");
  }
  std::vector<double> h0 = draws.h0;
  std::vector<double> h1 = draws.h1;
  std::sort(h0.begin(), h0.end());
  std::sort(h1.begin(), h1.end());
  const auto above = [](const std::vector<double>& sorted, double t) {
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), t);
    return static_cast<double>(sorted.end() - it) / static_cast<double>(sorted.size());
  };
  RocCurve curve;
  curve.source = RocSource::Empirical;
  curve.n_trials_per_point = std::min(h0.size(), h1.size());
  // Ascending thresholds give descending probabilities; emit in P_f order.
  for (auto it = thresholds.rbegin(); it != thresholds.rend(); ++it) {
    curve.points.push_back({above(h0, *it), above(h1, *it), *it});
  }
  return curve;
}

RocCurve empirical_roc(const ScenarioConfig& scenario, std::span<const double> thresholds,
                       std::size_t n_trials, unsigned threads) {
  require_trials(n_trials, 1000, "n_trials");
  return roc_from_draws(draw_delta_pairs(scenario, n_trials, threads), thresholds);
}

double empirical_threshold(std::span<const double> sorted_samples, double p_false_alarm) {
  if (sorted_samples.empty()) throw Error(ErrorKind::InsufficientTrials, "samples", "no samples");
  if (!(p_false_alarm > 0.0 && p_false_alarm < 1.0)) {
    throw Error(ErrorKind::DomainError, "p_false_alarm", "must lie in (0,1)");
  }
  const std::size_t n = sorted_samples.size();
  const auto k = static_cast<std::size_t>(std::llround(p_false_alarm * static_cast<double>(n)));
  if (k == 0) return sorted_samples.back();
  if (k >= n) return std::nextafter(sorted_samples.front(), -INFINITY);
  // Exactly k samples lie strictly above the (n-k)-th order statistic when values are distinct.
  return sorted_samples[n - k - 1];
}

GaussianityCheck validate_gaussianity(const EmpiricalSummary& summary, const GaussianStat& target) {
  require_trials(summary.n_trials, 10000, "n_trials");
  GaussianityCheck check;
  check.mean_gap = summary.std_error_mean > 0.0
                       ? std::abs(summary.mean - target.mean()) / summary.std_error_mean
                       : (summary.mean == target.mean() ? 0.0 : INFINITY);
  check.variance_ratio = target.variance() > 0.0 ? summary.variance / target.variance() : INFINITY;

  const double sigma = target.stddev();
  const auto& xs = summary.sorted_samples;
  const double n = static_cast<double>(xs.size());
  double gap = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = sigma > 0.0 ? 1.0 - q_function((xs[i] - target.mean()) / sigma)
                                 : (xs[i] >= target.mean() ? 1.0 : 0.0);
    gap = std::max({gap, std::abs(static_cast<double>(i + 1) / n - f), std::abs(f - static_cast<double>(i) / n)});
  }
  check.cdf_gap = gap;
  check.mean_ok = check.mean_gap < GaussianityCheck::kMeanGapTolerance;
  check.cdf_ok = check.cdf_gap < GaussianityCheck::kCdfGapTolerance;
  return check;
}

}  // namespace ris_sei
