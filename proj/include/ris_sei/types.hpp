#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ris_sei {

using Complex = std::complex<double>;

inline bool is_finite(Complex v) noexcept {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

enum class RisState { On, Off };

/// Diagonal RIS reflection matrix: per-element amplitude in [0,1] and phase in [0, 2pi).
class RisConfig {
 public:
  RisConfig(std::vector<double> amplitudes, std::vector<double> phases, RisState state = RisState::On);

  /// Same amplitude and phase on every element.
  static RisConfig uniform(std::size_t n_elements, double amplitude, double phase = 0.0,
                           RisState state = RisState::On);

  std::size_t n_elements() const noexcept { return amplitudes_.size(); }
  std::span<const double> amplitudes() const noexcept { return amplitudes_; }
  std::span<const double> phases() const noexcept { return phases_; }
  RisState state() const noexcept { return state_; }
  bool is_on() const noexcept { return state_ == RisState::On; }

  /// alpha_n * exp(j theta_n), one per element.
  std::span<const Complex> reflection() const noexcept { return reflection_; }

  RisConfig with_state(RisState state) const;

  bool operator==(const RisConfig& other) const {
    return amplitudes_ == other.amplitudes_ && phases_ == other.phases_ && state_ == other.state_;
  }

 private:
  std::vector<double> amplitudes_;
  std::vector<double> phases_;
  std::vector<Complex> reflection_;
  RisState state_;
};

/// Returns the configuration with the RIS switched off; the cascaded path vanishes downstream.
RisConfig ris_off(const RisConfig& config);

/// Variances of every channel leg and of the receiver noise.
class ChannelParams {
 public:
  ChannelParams(double var_ar, double var_rb, double var_a, double var_e, double noise_var);

  double var_ar() const noexcept { return var_ar_; }
  double var_rb() const noexcept { return var_rb_; }
  double var_a() const noexcept { return var_a_; }
  double var_e() const noexcept { return var_e_; }
  double noise_var() const noexcept { return noise_var_; }

  ChannelParams with_var_e(double var_e) const;

  bool operator==(const ChannelParams&) const = default;

 private:
  double var_ar_;
  double var_rb_;
  double var_a_;
  double var_e_;
  double noise_var_;
};

enum class FadingMode { PerSample, PerBlock };

enum class Hypothesis {
  Legitimate,  // H0: Alice transmits, RIS as configured
  Spoofing,    // H1: Eve transmits over her direct link only
};

class ScenarioConfig {
 public:
  ScenarioConfig(std::size_t samples_per_block, std::size_t n_subcarriers, FadingMode fading_mode,
                 std::uint64_t seed, ChannelParams channel, RisConfig ris);

  std::size_t samples_per_block() const noexcept { return samples_per_block_; }
  std::size_t n_subcarriers() const noexcept { return n_subcarriers_; }
  FadingMode fading_mode() const noexcept { return fading_mode_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const ChannelParams& channel() const noexcept { return channel_; }
  const RisConfig& ris() const noexcept { return ris_; }

  ScenarioConfig with_seed(std::uint64_t seed) const;
  ScenarioConfig with_ris(RisConfig ris) const;
  ScenarioConfig with_channel(ChannelParams channel) const;
  ScenarioConfig with_samples_per_block(std::size_t samples_per_block) const;

  bool operator==(const ScenarioConfig&) const = default;

 private:
  std::size_t samples_per_block_;
  std::size_t n_subcarriers_;
  FadingMode fading_mode_;
  std::uint64_t seed_;
  ChannelParams channel_;
  RisConfig ris_;
};

/// Mean and variance of a Gaussian approximation.
class GaussianStat {
 public:
  GaussianStat(double mean, double variance);

  double mean() const noexcept { return mean_; }
  double variance() const noexcept { return variance_; }
  double stddev() const noexcept;

  bool operator==(const GaussianStat&) const = default;

 private:
  double mean_;
  double variance_;
};

}  // namespace ris_sei
