#include "ris_sei/channel.hpp"

#include <cmath>
#include <string>

#include "ris_sei/errors.hpp"

namespace ris_sei {

namespace {

// Unit-modulus QPSK symbol drawn from two random bits.
Complex qpsk_symbol(RandomStream& rng) {
  switch (rng() >> 62) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

Complex draw_scaled(double scale, RandomStream& rng) {
  const double re = rng.normal();
  const double im = rng.normal();
  return {scale * re, scale * im};
}

// Cascaded plus direct channel for one fresh draw of every leg, without
// materialising a ChannelRealization.
Complex draw_equivalent(std::span<const Complex> reflection, double scale_ar, double scale_rb,
                        double scale_a, RandomStream& rng) {
  Complex cascade{};
  for (const Complex& r : reflection) {
    const Complex h_ar = draw_scaled(scale_ar, rng);
    const Complex h_rb = draw_scaled(scale_rb, rng);
    cascade += r * (h_rb * h_ar);
  }
  return cascade + draw_scaled(scale_a, rng);
}

}  // namespace

Complex draw_complex_gaussian(double variance, RandomStream& rng) {
  if (variance == 0.0) return {};
  return draw_scaled(std::sqrt(variance / 2.0), rng);
}

ChannelRealization draw_realization(const RisConfig& ris, const ChannelParams& params, RandomStream& rng) {
  ChannelRealization r;
  const std::size_t n = ris.n_elements();
  r.h_ar.reserve(n);
  r.h_rb.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.h_ar.push_back(draw_complex_gaussian(params.var_ar(), rng));
    r.h_rb.push_back(draw_complex_gaussian(params.var_rb(), rng));
  }
  r.h_ab = draw_complex_gaussian(params.var_a(), rng);
  r.h_eb = draw_complex_gaussian(params.var_e(), rng);
  return r;
}

Complex equivalent_channel(const ChannelRealization& realization, const RisConfig& ris) {
  const std::size_t n = ris.n_elements();
  if (realization.h_ar.size() != n || realization.h_rb.size() != n) {
    throw Error(ErrorKind::LengthMismatch, "realization",
                "expected " + std::to_string(n) + " elements, got h_ar=" +
                    std::to_string(realization.h_ar.size()) +
                    " h_rb=" + std::to_string(realization.h_rb.size()));
  }
  if (!ris.is_on()) return realization.h_ab;
  const auto reflection = ris.reflection();
  Complex cascade{};
  for (std::size_t i = 0; i < n; ++i) {
    cascade += reflection[i] * (realization.h_rb[i] * realization.h_ar[i]);
  }
  return cascade + realization.h_ab;
}

SampleBlock simulate_block(const ScenarioConfig& scenario, Hypothesis hypothesis, RandomStream& rng) {
  const ChannelParams& p = scenario.channel();
  const RisConfig& ris = scenario.ris();
  const std::size_t length = scenario.samples_per_block();

  SampleBlock block;
  block.hypothesis = hypothesis;
  block.seed_used = rng.key();
  block.samples.resize(length);

  const double noise_scale = std::sqrt(p.noise_var() / 2.0);
  const bool legitimate = hypothesis == Hypothesis::Legitimate;
  // The cascaded path only exists for Alice with the RIS switched on.
  const std::span<const Complex> reflection =
      legitimate && ris.is_on() ? ris.reflection() : std::span<const Complex>{};
  const double scale_ar = std::sqrt(p.var_ar() / 2.0);
  const double scale_rb = std::sqrt(p.var_rb() / 2.0);
  const double scale_direct = std::sqrt((legitimate ? p.var_a() : p.var_e()) / 2.0);

  if (scenario.fading_mode() == FadingMode::PerSample) {
    for (auto& y : block.samples) {
      const Complex h = draw_equivalent(reflection, scale_ar, scale_rb, scale_direct, rng);
      y = h * qpsk_symbol(rng) + draw_scaled(noise_scale, rng);
    }
  } else {
    const Complex h = draw_equivalent(reflection, scale_ar, scale_rb, scale_direct, rng);
    for (auto& y : block.samples) {
      y = h * qpsk_symbol(rng) + draw_scaled(noise_scale, rng);
    }
  }
  return block;
}

std::vector<SampleBlock> simulate_subcarriers(const ScenarioConfig& scenario, Hypothesis hypothesis,
                                              const RandomStream& rng) {
  std::vector<SampleBlock> blocks;
  blocks.reserve(scenario.n_subcarriers());
  for (std::size_t k = 0; k < scenario.n_subcarriers(); ++k) {
    RandomStream sub = rng.substream(k);
    blocks.push_back(simulate_block(scenario, hypothesis, sub));
  }
  return blocks;
}

}  // namespace ris_sei
