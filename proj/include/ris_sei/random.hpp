#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace ris_sei {

/// Seedable xoshiro256++ stream with deterministic splitting.
///
/// `substream(i)` depends only on this stream's key and `i`, never on how many
/// numbers have already been drawn, so trial `i` of an experiment reproduces
/// identically whether trials run serially or concurrently.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed);

  RandomStream substream(std::uint64_t index) const;

  std::uint64_t key() const noexcept { return key_; }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  /// Standard normal variate.
  double normal();

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t key_;
  std::array<std::uint64_t, 4> s_{};
};

/// Named substreams so independent consumers of one seed never overlap.
namespace stream_tag {
inline constexpr std::uint64_t kRssH0 = 1;
inline constexpr std::uint64_t kRssH1 = 2;
inline constexpr std::uint64_t kDeltaH0 = 3;
inline constexpr std::uint64_t kDeltaH1 = 4;
inline constexpr std::uint64_t kChannel = 5;
inline constexpr std::uint64_t kCalibration = 16;
inline constexpr std::uint64_t kSimulate = 32;
inline constexpr std::uint64_t kExperiment = 64;
inline constexpr std::uint64_t kValidation = 128;
}  // namespace stream_tag

}  // namespace ris_sei
