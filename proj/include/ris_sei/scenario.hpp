#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "ris_sei/types.hpp"

namespace ris_sei {

/// Parses a flat `key = value` scenario document (`#` starts a comment).
///
/// Recognised keys: n_elements, amplitudes (`a1,a2,...` or `uniform:<v>`),
/// phases (`t1,t2,...`, `coherent` or `zero`), ris_state (`on`/`off`), var_ar,
/// var_rb, var_a, var_e, noise_var, samples_per_block, n_subcarriers,
/// fading_mode (`per_sample`/`per_block`) and seed.
///
/// Optional keys default to n_subcarriers = 1, fading_mode = per_sample and
/// ris_state = on. A missing `seed` falls back to `fallback_seed` and is a
/// MissingKey error when no fallback is given. Any failure raises Error with
/// kind MissingKey, OutOfRange or MalformedDocument naming the offending key.
ScenarioConfig parse_scenario(std::string_view text,
                              std::optional<std::uint64_t> fallback_seed = std::nullopt);

/// Canonical document for `config`; parse_scenario(serialize_scenario(c)) == c.
std::string serialize_scenario(const ScenarioConfig& config);

std::string_view to_string(FadingMode mode);
std::string_view to_string(RisState state);
std::string_view to_string(Hypothesis hypothesis);

}  // namespace ris_sei
