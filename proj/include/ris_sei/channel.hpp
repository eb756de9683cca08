#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ris_sei/random.hpp"
#include "ris_sei/types.hpp"

namespace ris_sei {

/// One draw of every channel leg.
struct ChannelRealization {
  std::vector<Complex> h_ar;  // Alice -> RIS, one per element
  std::vector<Complex> h_rb;  // RIS -> Bob, one per element
  Complex h_ab;               // Alice -> Bob direct
  Complex h_eb;               // Eve -> Bob direct
};

/// Received samples at Bob. `hypothesis` is empty for recorded observations.
struct SampleBlock {
  std::vector<Complex> samples;
  std::optional<Hypothesis> hypothesis;
  std::uint64_t seed_used = 0;
};

/// Circularly symmetric complex Gaussian: real and imaginary parts are
/// independent N(0, variance/2). A zero variance returns exactly (0, 0).
Complex draw_complex_gaussian(double variance, RandomStream& rng);

ChannelRealization draw_realization(const RisConfig& ris, const ChannelParams& params, RandomStream& rng);

/// sum_n alpha_n e^{j theta_n} h_rb[n] h_ar[n] + h_ab, or h_ab alone when the RIS is off.
/// Throws LengthMismatch when the realization does not have one entry per element.
Complex equivalent_channel(const ChannelRealization& realization, const RisConfig& ris);

/// Generates L received samples. Under H0 Alice transmits through the equivalent
/// channel; under H1 Eve transmits over h_eb with the cascaded path absent. Data
/// symbols are unit-modulus QPSK. PerSample fading redraws every leg for each
/// sample; PerBlock draws once.
SampleBlock simulate_block(const ScenarioConfig& scenario, Hypothesis hypothesis, RandomStream& rng);

/// One block per subcarrier; block k uses `rng.substream(k)`.
std::vector<SampleBlock> simulate_subcarriers(const ScenarioConfig& scenario, Hypothesis hypothesis,
                                              const RandomStream& rng);

}  // namespace ris_sei
