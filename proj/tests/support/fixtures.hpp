#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "ris_sei/errors.hpp"
#include "ris_sei/types.hpp"

namespace fixtures {

inline ris_sei::ScenarioConfig scenario(std::size_t l, std::size_t n, double var_ar, double var_rb, double var_a,
                                        double var_e, double noise, std::uint64_t seed = 11,
                                        ris_sei::RisState state = ris_sei::RisState::On) {
  return ris_sei::ScenarioConfig(l, 1, ris_sei::FadingMode::PerSample, seed,
                                 ris_sei::ChannelParams(var_ar, var_rb, var_a, var_e, noise),
                                 ris_sei::RisConfig::uniform(n, 1.0, 0.0, state));
}

/// Runs `fn` and returns the kind and subject of the ris_sei::Error it throws.
template <class Fn>
std::pair<ris_sei::ErrorKind, std::string> error_of(Fn&& fn) {
  try {
    fn();
  } catch (const ris_sei::Error& e) {
    return {e.kind(), e.subject()};
  }
  FAIL("expected ris_sei::Error");
  return {};
}

}  // namespace fixtures
