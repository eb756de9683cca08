#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "ris_sei/analytic.hpp"
#include "ris_sei/monte_carlo.hpp"
#include "ris_sei/random.hpp"
#include "ris_sei/scenario.hpp"

using namespace ris_sei;
using fixtures::error_of;

namespace {

const char* kBase = R"(# two-element surface
n_elements = 2
amplitudes = 0.5, 1
phases = 0, 1.5
var_ar = 0.25
var_rb = 0.5
var_a = 1
var_e = 0.25
noise_var = 0.1
samples_per_block = 64
seed = 42
)";

std::string without(std::string doc, const std::string& key) {
  const auto at = doc.find(key + " =");
  REQUIRE(at != std::string::npos);
  doc.erase(at, doc.find('\n', at) - at + 1);
  return doc;
}

std::string replaced(std::string doc, const std::string& key, const std::string& value) {
  const auto at = doc.find(key + " =");
  REQUIRE(at != std::string::npos);
  const auto end = doc.find('\n', at);
  doc.replace(at, end - at, key + " = " + value);
  return doc;
}

}  // namespace

TEST_CASE("parse_scenario reads every documented key") {
  const ScenarioConfig s = parse_scenario(kBase);
  CHECK(s.samples_per_block() == 64);
  CHECK(s.n_subcarriers() == 1);
  CHECK(s.fading_mode() == FadingMode::PerSample);
  CHECK(s.seed() == 42);
  CHECK(s.ris().state() == RisState::On);
  CHECK(s.ris().n_elements() == 2);
  CHECK(s.ris().amplitudes()[0] == 0.5);
  CHECK(s.ris().phases()[1] == 1.5);
  CHECK(s.channel() == ChannelParams(0.25, 0.5, 1.0, 0.25, 0.1));
}

TEST_CASE("parse_scenario applies defaults for optional keys") {
  const ScenarioConfig s = parse_scenario(kBase);
  CHECK(s.n_subcarriers() == 1);
  const ScenarioConfig t = parse_scenario(std::string(kBase) + "n_subcarriers = 4\nfading_mode = per_block\nris_state = off\n");
  CHECK(t.n_subcarriers() == 4);
  CHECK(t.fading_mode() == FadingMode::PerBlock);
  CHECK(t.ris().state() == RisState::Off);
}

TEST_CASE("parse_scenario shorthand values") {
  const auto s = parse_scenario(replaced(replaced(kBase, "amplitudes", "uniform:0.75"), "phases", "coherent"));
  CHECK(s.ris().amplitudes()[0] == 0.75);
  CHECK(s.ris().amplitudes()[1] == 0.75);
  CHECK(s.ris().phases()[0] == 0.0);
  CHECK(parse_scenario(replaced(kBase, "phases", "zero")).ris().phases()[1] == 0.0);
}

TEST_CASE("parse_scenario names the offending key") {
  using K = ErrorKind;
  CHECK(error_of([] { parse_scenario(replaced(kBase, "n_elements", "0")); }) ==
        std::pair{K::OutOfRange, std::string("n_elements")});
  CHECK(error_of([] { parse_scenario(replaced(kBase, "amplitudes", "0.5, 1.2")); }) ==
        std::pair{K::OutOfRange, std::string("amplitudes")});
  CHECK(error_of([] { parse_scenario(replaced(kBase, "phases", "0, 7")); }) ==
        std::pair{K::OutOfRange, std::string("phases")});
  CHECK(error_of([] { parse_scenario(replaced(kBase, "amplitudes", "1,1,1")); }).second == "amplitudes");
  CHECK(error_of([] { parse_scenario(replaced(kBase, "var_ar", "0")); }) ==
        std::pair{K::OutOfRange, std::string("var_ar")});
  CHECK(error_of([] { parse_scenario(replaced(kBase, "var_e", "-1")); }) ==
        std::pair{K::OutOfRange, std::string("var_e")});
  CHECK(error_of([] { parse_scenario(replaced(kBase, "samples_per_block", "-3")); }) ==
        std::pair{K::OutOfRange, std::string("samples_per_block")});
  CHECK(error_of([] { parse_scenario(without(kBase, "var_rb")); }) ==
        std::pair{K::MissingKey, std::string("var_rb")});
  CHECK(error_of([] { parse_scenario(without(kBase, "seed")); }) ==
        std::pair{K::MissingKey, std::string("seed")});
  CHECK(error_of([] { parse_scenario(replaced(kBase, "noise_var", "abc")); }) ==
        std::pair{K::MalformedDocument, std::string("noise_var")});
  CHECK(error_of([] { parse_scenario(std::string(kBase) + "fading_mode = sometimes\n"); }).first == K::MalformedDocument);
  CHECK(error_of([] { parse_scenario(std::string(kBase) + "colour = blue\n"); }) ==
        std::pair{K::MalformedDocument, std::string("colour")});
  CHECK(error_of([] { parse_scenario(std::string(kBase) + "seed = 3\n"); }) ==
        std::pair{K::MalformedDocument, std::string("seed")});
  CHECK(error_of([] { parse_scenario(std::string(kBase) + "ris_state on\n"); }).first == K::MalformedDocument);
}

TEST_CASE("parse_scenario seed fallback") {
  CHECK(parse_scenario(without(kBase, "seed"), 9).seed() == 9);
  CHECK(parse_scenario(kBase, 9).seed() == 42);
}

TEST_CASE("serialize then parse is the identity on random valid documents") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> count(1, 12);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = count(gen);
    std::vector<double> amp(n), phase(n);
    for (int i = 0; i < n; ++i) {
      amp[i] = unit(gen);
      phase[i] = unit(gen) * 2.0 * std::numbers::pi * 0.999999;
    }
    const ScenarioConfig config(
        static_cast<std::size_t>(count(gen) * 37), static_cast<std::size_t>(count(gen)),
        trial % 2 ? FadingMode::PerBlock : FadingMode::PerSample, gen(),
        ChannelParams(unit(gen) + 1e-9, std::exp(10 * unit(gen) - 5), unit(gen) * 3, unit(gen) * 1e-7, 1e-3 + unit(gen)),
        RisConfig(amp, phase, trial % 3 ? RisState::On : RisState::Off));
    const std::string text = serialize_scenario(config);
    INFO(text);
    REQUIRE(parse_scenario(text) == config);
    REQUIRE(serialize_scenario(parse_scenario(text)) == text);
  }
}

TEST_CASE("RisConfig enforces its invariants") {
  CHECK(error_of([] { RisConfig({}, {}); }).first == ErrorKind::OutOfRange);
  CHECK(error_of([] { RisConfig({0.5, 0.5}, {0.0}); }).second == "phases");
  CHECK(error_of([] { RisConfig({-0.1}, {0.0}); }).second == "amplitudes");
  CHECK(error_of([] { RisConfig({1.0}, {2.0 * std::numbers::pi}); }).second == "phases");
  CHECK(error_of([] { RisConfig({std::nan("")}, {0.0}); }).second == "amplitudes");
  CHECK_NOTHROW(RisConfig({0.0, 1.0}, {0.0, std::nextafter(2.0 * std::numbers::pi, 0.0)}));
}

TEST_CASE("ChannelParams and ScenarioConfig enforce their invariants") {
  CHECK(error_of([] { ChannelParams(1, 1, 1, 1, 0); }).second == "noise_var");
  CHECK(error_of([] { ChannelParams(1, std::numeric_limits<double>::infinity(), 1, 1, 1); }).second == "var_rb");
  CHECK_NOTHROW(ChannelParams(1, 1, 0, 0, 1));
  CHECK(error_of([] { fixtures::scenario(0, 1, 1, 1, 1, 1, 1); }).second == "samples_per_block");
  CHECK(error_of([] { GaussianStat(0.0, -1e-3); }).first == ErrorKind::NegativeVariance);
}

TEST_CASE("ris_off switches the state and removes the cascaded variance") {
  const RisConfig on({0.3, 0.9}, {1.0, 2.0});
  const RisConfig off = ris_off(on);
  CHECK(off.state() == RisState::Off);
  CHECK(off.amplitudes()[1] == 0.9);
  const ChannelParams p(2.0, 3.0, 0.7, 0.1, 1.0);
  CHECK(lemma1_variance(off, p) == 0.7);
}

TEST_CASE("ris_off matches a single zero-amplitude element in distribution") {
  const ScenarioConfig base = fixtures::scenario(8, 4, 1.0, 1.0, 1.0, 0.5, 0.5, 77);
  const ScenarioConfig off = base.with_ris(ris_off(base.ris()));
  const ScenarioConfig zero = base.with_ris(RisConfig({0.0}, {0.0})).with_seed(78);
  const std::size_t n = 100000;
  const auto a = oracle::moments(sample_rss(off, Hypothesis::Legitimate, n, RandomStream(1)));
  const auto b = oracle::moments(sample_rss(zero, Hypothesis::Legitimate, n, RandomStream(2)));
  CHECK(std::abs(a.mean - b.mean) < 4.0 * std::hypot(a.std_error, b.std_error));
  const double var_se = std::sqrt(2.0 / (n - 1)) * a.variance * 1.5;  // loose: T is not Gaussian at L=8
  CHECK(std::abs(a.variance - b.variance) < 4.0 * std::sqrt(2.0) * var_se);
}
