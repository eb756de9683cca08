#pragma once

#include <cstddef>
#include <span>

#include "ris_sei/channel.hpp"

namespace ris_sei {

/// Received signal strength (1/L) sum |y(l)|^2 of one block.
struct RssValue {
  double value = 0.0;
  std::size_t n_samples = 0;
};

/// Reference RSS minus observed RSS.
struct TestStatistic {
  double delta = 0.0;
  RssValue ref_rss;
  RssValue obs_rss;
};

enum class Verdict { Normal, UnderAttack };

struct Decision {
  Verdict verdict = Verdict::Normal;
  double threshold = 0.0;
  TestStatistic statistic;
};

/// Throws EmptyBlock for zero samples.
RssValue rss(std::span<const Complex> samples);
RssValue rss(const SampleBlock& block);

TestStatistic delta_t(const RssValue& reference, const RssValue& observation);

/// UnderAttack iff delta > threshold; a tie is Normal.
Decision decide(const TestStatistic& statistic, double threshold);

}  // namespace ris_sei
