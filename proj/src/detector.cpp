#include "ris_sei/detector.hpp"

#include <cmath>

#include "ris_sei/errors.hpp"

namespace ris_sei {

RssValue rss(std::span<const Complex> samples) {
  if (samples.empty()) throw Error(ErrorKind::EmptyBlock, "samples", "RSS of an empty block");
  // Neumaier-compensated sum keeps the result insensitive to sample order.
  double sum = 0.0;
  double carry = 0.0;
  for (const Complex& y : samples) {
    const double p = std::norm(y);
    const double t = sum + p;
    carry += std::abs(sum) >= p ? (sum - t) + p : (p - t) + sum;
    sum = t;
  }
  return {(sum + carry) / static_cast<double>(samples.size()), samples.size()};
}

RssValue rss(const SampleBlock& block) { return rss(block.samples); }

TestStatistic delta_t(const RssValue& reference, const RssValue& observation) {
  return {reference.value - observation.value, reference, observation};
}

Decision decide(const TestStatistic& statistic, double threshold) {
  if (!std::isfinite(threshold)) throw Error(ErrorKind::DomainError, "threshold", "must be finite");
  return {statistic.delta > threshold ? Verdict::UnderAttack : Verdict::Normal, threshold, statistic};
}

}  // namespace ris_sei
