#include "ris_sei/types.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ris_sei/errors.hpp"

namespace ris_sei {

namespace {

void require(bool ok, const char* key, const std::string& detail) {
  if (!ok) throw Error(ErrorKind::OutOfRange, key, detail);
}

}  // namespace

RisConfig::RisConfig(std::vector<double> amplitudes, std::vector<double> phases, RisState state)
    : amplitudes_(std::move(amplitudes)), phases_(std::move(phases)), state_(state) {
  require(!amplitudes_.empty(), "n_elements", "RIS needs at least one element");
  require(amplitudes_.size() == phases_.size(), "phases",
          "expected " + std::to_string(amplitudes_.size()) + " phases, got " +
              std::to_string(phases_.size()));
  reflection_.reserve(amplitudes_.size());
  for (std::size_t n = 0; n < amplitudes_.size(); ++n) {
    const double a = amplitudes_[n];
    const double t = phases_[n];
    require(std::isfinite(a) && a >= 0.0 && a <= 1.0, "amplitudes",
            "amplitude " + std::to_string(a) + " outside [0,1]");
    require(std::isfinite(t) && t >= 0.0 && t < 2.0 * std::numbers::pi, "phases",
            "phase " + std::to_string(t) + " outside [0,2pi)");
    reflection_.push_back(std::polar(a, t));
  }
}

RisConfig RisConfig::uniform(std::size_t n_elements, double amplitude, double phase, RisState state) {
  return RisConfig(std::vector<double>(n_elements, amplitude), std::vector<double>(n_elements, phase),
                   state);
}

RisConfig RisConfig::with_state(RisState state) const {
  RisConfig copy = *this;
  copy.state_ = state;
  return copy;
}

RisConfig ris_off(const RisConfig& config) { return config.with_state(RisState::Off); }

ChannelParams::ChannelParams(double var_ar, double var_rb, double var_a, double var_e, double noise_var)
    : var_ar_(var_ar), var_rb_(var_rb), var_a_(var_a), var_e_(var_e), noise_var_(noise_var) {
  require(std::isfinite(var_ar) && var_ar > 0.0, "var_ar", "must be finite and > 0");
  require(std::isfinite(var_rb) && var_rb > 0.0, "var_rb", "must be finite and > 0");
  require(std::isfinite(var_a) && var_a >= 0.0, "var_a", "must be finite and >= 0");
  require(std::isfinite(var_e) && var_e >= 0.0, "var_e", "must be finite and >= 0");
  require(std::isfinite(noise_var) && noise_var > 0.0, "noise_var", "must be finite and > 0");
}

ChannelParams ChannelParams::with_var_e(double var_e) const {
  return ChannelParams(var_ar_, var_rb_, var_a_, var_e, noise_var_);
}

ScenarioConfig::ScenarioConfig(std::size_t samples_per_block, std::size_t n_subcarriers,
                               FadingMode fading_mode, std::uint64_t seed, ChannelParams channel,
                               RisConfig ris)
    : samples_per_block_(samples_per_block),
      n_subcarriers_(n_subcarriers),
      fading_mode_(fading_mode),
      seed_(seed),
      channel_(std::move(channel)),
      ris_(std::move(ris)) {
  require(samples_per_block_ >= 1, "samples_per_block", "must be >= 1");
  require(n_subcarriers_ >= 1, "n_subcarriers", "must be >= 1");
}

ScenarioConfig ScenarioConfig::with_seed(std::uint64_t seed) const {
  ScenarioConfig copy = *this;
  copy.seed_ = seed;
  return copy;
}

ScenarioConfig ScenarioConfig::with_ris(RisConfig ris) const {
  ScenarioConfig copy = *this;
  copy.ris_ = std::move(ris);
  return copy;
}

ScenarioConfig ScenarioConfig::with_channel(ChannelParams channel) const {
  ScenarioConfig copy = *this;
  copy.channel_ = std::move(channel);
  return copy;
}

ScenarioConfig ScenarioConfig::with_samples_per_block(std::size_t samples_per_block) const {
  return ScenarioConfig(samples_per_block, n_subcarriers_, fading_mode_, seed_, channel_, ris_);
}

GaussianStat::GaussianStat(double mean, double variance) : mean_(mean), variance_(variance) {
  if (!std::isfinite(mean)) throw Error(ErrorKind::OutOfRange, "mean", "must be finite");
  if (!std::isfinite(variance)) throw Error(ErrorKind::OutOfRange, "variance", "must be finite");
  if (variance < 0.0) {
    throw Error(ErrorKind::NegativeVariance, "variance", std::to_string(variance));
  }
}

double GaussianStat::stddev() const noexcept { return std::sqrt(variance_); }

}  // namespace ris_sei
