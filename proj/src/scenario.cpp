#include "ris_sei/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <vector>

#include <fmt/format.h>

#include "ris_sei/errors.hpp"

namespace ris_sei {

namespace {

const std::set<std::string, std::less<>> kKnownKeys = {
    "n_elements", "amplitudes",        "phases",        "ris_state",   "var_ar",
    "var_rb",     "var_a",             "var_e",         "noise_var",   "samples_per_block",
    "n_subcarriers", "fading_mode",    "seed",
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void malformed(std::string_view key, const std::string& detail) {
  throw Error(ErrorKind::MalformedDocument, std::string(key), detail);
}

double parse_real(std::string_view key, std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) malformed(key, fmt::format("'{}' is not a real number", text));
  return value;
}

std::uint64_t parse_count(std::string_view key, std::string_view text) {
  text = trim(text);
  const auto* end = text.data() + text.size();
  if (!text.empty() && text.front() == '-') {
    std::int64_t negative = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), end, negative);
    if (ec == std::errc() && ptr == end) {
      throw Error(ErrorKind::OutOfRange, std::string(key), fmt::format("{} is negative", negative));
    }
    malformed(key, fmt::format("'{}' is not an integer", text));
  }
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec == std::errc::result_out_of_range) {
    throw Error(ErrorKind::OutOfRange, std::string(key), fmt::format("'{}' overflows 64 bits", text));
  }
  if (ec != std::errc() || ptr != end) malformed(key, fmt::format("'{}' is not an integer", text));
  return value;
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::vector<double> values;
  while (true) {
    const auto comma = text.find(',');
    values.push_back(parse_real(key, text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return values;
}

class Document {
 public:
  explicit Document(std::string_view text) {
    std::size_t line_no = 0;
    while (!text.empty()) {
      ++line_no;
      const auto nl = text.find('\n');
      std::string_view line = text.substr(0, nl);
      text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
      if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        malformed(fmt::format("line {}", line_no), fmt::format("expected 'key = value', got '{}'", line));
      }
      const std::string_view key = trim(line.substr(0, eq));
      const std::string_view value = trim(line.substr(eq + 1));
      if (key.empty()) malformed(fmt::format("line {}", line_no), "empty key");
      if (!kKnownKeys.contains(key)) malformed(key, "unknown key");
      if (value.empty()) malformed(key, "empty value");
      if (!entries_.emplace(std::string(key), std::string(value)).second) malformed(key, "duplicate key");
    }
  }

  std::optional<std::string_view> find(std::string_view key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return std::string_view(it->second);
  }

  std::string_view require(std::string_view key) const {
    if (auto v = find(key)) return *v;
    throw Error(ErrorKind::MissingKey, std::string(key), "required key is absent");
  }

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

bool all_equal(std::span<const double> v) {
  return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

std::string join(std::span<const double> v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += fmt::format("{}", v[i]);
  }
  return out;
}

}  // namespace

std::string_view to_string(FadingMode mode) {
  return mode == FadingMode::PerSample ? "per_sample" : "per_block";
}

std::string_view to_string(RisState state) { return state == RisState::On ? "on" : "off"; }

std::string_view to_string(Hypothesis hypothesis) {
  return hypothesis == Hypothesis::Legitimate ? "h0" : "h1";
}

ScenarioConfig parse_scenario(std::string_view text, std::optional<std::uint64_t> fallback_seed) {
  const Document doc(text);

  const std::uint64_t n_elements = parse_count("n_elements", doc.require("n_elements"));
  if (n_elements == 0) throw Error(ErrorKind::OutOfRange, "n_elements", "must be >= 1");

  std::vector<double> amplitudes;
  const std::string_view amp_text = doc.require("amplitudes");
  if (amp_text.starts_with("uniform:")) {
    amplitudes.assign(n_elements, parse_real("amplitudes", amp_text.substr(8)));
  } else {
    amplitudes = parse_list("amplitudes", amp_text);
  }
  if (amplitudes.size() != n_elements) {
    throw Error(ErrorKind::OutOfRange, "amplitudes",
                fmt::format("{} values for {} elements", amplitudes.size(), n_elements));
  }

  std::vector<double> phases;
  const std::string_view phase_text = doc.require("phases");
  if (phase_text == "coherent" || phase_text == "zero") {
    phases.assign(n_elements, 0.0);
  } else {
    phases = parse_list("phases", phase_text);
  }
  if (phases.size() != n_elements) {
    throw Error(ErrorKind::OutOfRange, "phases",
                fmt::format("{} values for {} elements", phases.size(), n_elements));
  }

  RisState state = RisState::On;
  if (auto s = doc.find("ris_state")) {
    if (*s == "on") state = RisState::On;
    else if (*s == "off") state = RisState::Off;
    else malformed("ris_state", fmt::format("expected on/off, got '{}'", *s));
  }

  const auto real = [&](std::string_view key) { return parse_real(key, doc.require(key)); };
  ChannelParams channel(real("var_ar"), real("var_rb"), real("var_a"), real("var_e"), real("noise_var"));

  const std::uint64_t samples = parse_count("samples_per_block", doc.require("samples_per_block"));
  if (samples == 0) throw Error(ErrorKind::OutOfRange, "samples_per_block", "must be >= 1");

  std::uint64_t subcarriers = 1;
  if (auto k = doc.find("n_subcarriers")) {
    subcarriers = parse_count("n_subcarriers", *k);
    if (subcarriers == 0) throw Error(ErrorKind::OutOfRange, "n_subcarriers", "must be >= 1");
  }

  FadingMode fading = FadingMode::PerSample;
  if (auto f = doc.find("fading_mode")) {
    if (*f == "per_sample") fading = FadingMode::PerSample;
    else if (*f == "per_block") fading = FadingMode::PerBlock;
    else malformed("fading_mode", fmt::format("expected per_sample/per_block, got '{}'", *f));
  }

  std::uint64_t seed = 0;
  if (auto s = doc.find("seed")) {
    seed = parse_count("seed", *s);
  } else if (fallback_seed) {
    seed = *fallback_seed;
  } else {
    throw Error(ErrorKind::MissingKey, "seed", "no seed in document and no fallback seed supplied");
  }

  return ScenarioConfig(samples, subcarriers, fading, seed, channel,
                        RisConfig(std::move(amplitudes), std::move(phases), state));
}

std::string serialize_scenario(const ScenarioConfig& config) {
  const RisConfig& ris = config.ris();
  const ChannelParams& ch = config.channel();
  std::string out;
  const auto line = [&out](std::string_view key, const auto& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  line("n_elements", ris.n_elements());
  if (all_equal(ris.amplitudes())) {
    line("amplitudes", fmt::format("uniform:{}", ris.amplitudes().front()));
  } else {
    line("amplitudes", join(ris.amplitudes()));
  }
  const auto phases = ris.phases();
  if (std::all_of(phases.begin(), phases.end(), [](double t) { return t == 0.0; })) {
    line("phases", "zero");
  } else {
    line("phases", join(phases));
  }
  line("ris_state", to_string(ris.state()));
  line("var_ar", fmt::format("{}", ch.var_ar()));
  line("var_rb", fmt::format("{}", ch.var_rb()));
  line("var_a", fmt::format("{}", ch.var_a()));
  line("var_e", fmt::format("{}", ch.var_e()));
  line("noise_var", fmt::format("{}", ch.noise_var()));
  line("samples_per_block", config.samples_per_block());
  line("n_subcarriers", config.n_subcarriers());
  line("fading_mode", to_string(config.fading_mode()));
  line("seed", config.seed());
  return out;
}

}  // namespace ris_sei
