#include "ris_sei/random.hpp"

#include <boost/random/normal_distribution.hpp>

namespace ris_sei {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) : key_(seed) {
  // SplitMix64 expansion of the key into the xoshiro state.
  std::uint64_t x = seed;
  for (auto& word : s_) {
    x += kGolden;
    word = mix64(x);
  }
}

RandomStream RandomStream::substream(std::uint64_t index) const {
  return RandomStream(mix64(key_ ^ mix64((index + 1) * kGolden)));
}

double RandomStream::normal() {
  return boost::random::normal_distribution<double>()(*this);
}

}  // namespace ris_sei
