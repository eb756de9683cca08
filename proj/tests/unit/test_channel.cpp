#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "ris_sei/analytic.hpp"
#include "ris_sei/channel.hpp"
#include "ris_sei/detector.hpp"
#include "ris_sei/monte_carlo.hpp"
#include "ris_sei/random.hpp"

using namespace ris_sei;

TEST_CASE("substreams depend only on key and index") {
  RandomStream a(5);
  const RandomStream sub_before = a.substream(3);
  for (int i = 0; i < 100; ++i) a();
  RandomStream sub_after = a.substream(3);
  RandomStream copy = sub_before;
  for (int i = 0; i < 10; ++i) CHECK(copy() == sub_after());
  CHECK(RandomStream(5).substream(3).key() != RandomStream(5).substream(4).key());
  CHECK(RandomStream(5).key() != RandomStream(6).key());
}

TEST_CASE("zero variance draws exactly zero") {
  RandomStream rng(1);
  CHECK(draw_complex_gaussian(0.0, rng) == Complex(0.0, 0.0));
}

TEST_CASE("complex Gaussian draws have the documented moments") {
  RandomStream rng(2024);
  const std::size_t n = 1000000;
  Complex sum{}, pseudo{};
  double power = 0.0, re_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex h = draw_complex_gaussian(2.0, rng);
    sum += h;
    pseudo += h * h;
    power += std::norm(h);
    re_sq += h.real() * h.real();
  }
  sum /= double(n);
  pseudo /= double(n);
  power /= double(n);
  // mean at variance 2 scaled back to variance 1 for the 4e-3 bound
  CHECK(std::abs(sum) / std::sqrt(2.0) < 4e-3);
  CHECK(power == Catch::Approx(2.0).epsilon(0.01));
  CHECK(re_sq / n == Catch::Approx(1.0).epsilon(0.01));
  // E[h^2] has standard error var/sqrt(n) per component
  CHECK(std::abs(pseudo.real()) < 4.0 * 2.0 / std::sqrt(double(n)));
  CHECK(std::abs(pseudo.imag()) < 4.0 * 2.0 / std::sqrt(double(n)));
}

TEST_CASE("equivalent_channel composes cascade and direct link") {
  SECTION("single-term product") {
    const ChannelRealization r{{Complex(0, 1)}, {Complex(1, 0)}, Complex(0, 0), Complex(0, 0)};
    CHECK(equivalent_channel(r, RisConfig({1.0}, {0.0})) == Complex(0, 1));
  }
  SECTION("zero amplitudes leave the direct link") {
    const ChannelRealization r{{Complex(3, 1), Complex(2, 2)}, {Complex(1, 5), Complex(-1, 0)}, Complex(0.25, -4),
                               Complex(0, 0)};
    CHECK(equivalent_channel(r, RisConfig({0.0, 0.0}, {0.3, 1.0})) == Complex(0.25, -4));
    CHECK(equivalent_channel(r, RisConfig({1.0, 1.0}, {0.3, 1.0}, RisState::Off)) == Complex(0.25, -4));
  }
  SECTION("length mismatch") {
    const ChannelRealization r{{Complex(1, 0)}, {Complex(1, 0)}, Complex(0, 0), Complex(0, 0)};
    CHECK(fixtures::error_of([&] { equivalent_channel(r, RisConfig::uniform(2, 1.0)); }).first ==
          ErrorKind::LengthMismatch);
  }
}

TEST_CASE("equivalent channel power matches the brute-force oracle at N=64") {
  const RisConfig ris = RisConfig::uniform(64, 1.0, 2.1);
  const ChannelParams p(1.0, 1.0, 1.0, 0.0, 1.0);
  const std::size_t n = 100000;
  oracle::Simulator sim(99);
  std::vector<double> ref(n);
  const std::vector<double> amp(64, 1.0), phase(64, 2.1);
  for (auto& v : ref) v = sim.equivalent_power(amp, phase, 1.0, 1.0, 1.0);
  const double truth = oracle::moments(ref).mean;
  CHECK(truth == Catch::Approx(65.0).epsilon(0.02));

  const auto draws = sample_equivalent_channel(ris, p, n, RandomStream(3));
  std::vector<double> power(n);
  std::transform(draws.begin(), draws.end(), power.begin(), [](Complex h) { return std::norm(h); });
  CHECK(oracle::moments(power).mean == Catch::Approx(truth).epsilon(0.02));
  CHECK(lemma1_variance(ris, p) == Catch::Approx(truth).epsilon(0.02));
}

TEST_CASE("simulate_block under pure noise") {
  // The cascaded path needs positive leg variances, so the noise-only case switches the RIS off.
  ScenarioConfig s = fixtures::scenario(1000000, 1, 1.0, 1.0, 0.0, 0.0, 0.7, 1, RisState::Off);
  RandomStream rng(17);
  const SampleBlock b = simulate_block(s, Hypothesis::Legitimate, rng);
  REQUIRE(b.samples.size() == 1000000);
  CHECK(rss(b).value == Catch::Approx(0.7).epsilon(0.01));
}

TEST_CASE("simulate_block is deterministic and records its stream") {
  const ScenarioConfig s = fixtures::scenario(257, 5, 0.3, 0.6, 1.0, 0.4, 0.2);
  RandomStream a(123), b(123);
  const SampleBlock x = simulate_block(s, Hypothesis::Legitimate, a);
  const SampleBlock y = simulate_block(s, Hypothesis::Legitimate, b);
  CHECK(x.samples == y.samples);
  CHECK(x.seed_used == RandomStream(123).key());
  CHECK(x.hypothesis == Hypothesis::Legitimate);
  CHECK(std::all_of(x.samples.begin(), x.samples.end(), [](Complex c) { return is_finite(c); }));
}

TEST_CASE("H1 blocks do not depend on the RIS configuration") {
  const ScenarioConfig on = fixtures::scenario(300, 16, 0.3, 0.6, 1.0, 0.4, 0.2);
  const ScenarioConfig off = on.with_ris(ris_off(on.ris()));
  const ScenarioConfig other = on.with_ris(RisConfig({0.2}, {1.0}));
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    RandomStream a(seed), b(seed), c(seed);
    const auto x = simulate_block(on, Hypothesis::Spoofing, a).samples;
    CHECK(x == simulate_block(off, Hypothesis::Spoofing, b).samples);
    CHECK(x == simulate_block(other, Hypothesis::Spoofing, c).samples);
  }
}

TEST_CASE("per-block fading holds the channel over the block") {
  ScenarioConfig s(64, 1, FadingMode::PerBlock, 3, ChannelParams(1.0, 1.0, 1.0, 1.0, 1e-14), RisConfig::uniform(4, 1.0));
  RandomStream rng(8);
  const auto b = simulate_block(s, Hypothesis::Legitimate, rng).samples;
  const double first = std::norm(b.front());
  for (Complex y : b) CHECK(std::norm(y) == Catch::Approx(first).epsilon(1e-5));
  ScenarioConfig t(64, 1, FadingMode::PerSample, 3, s.channel(), s.ris());
  RandomStream rng2(8);
  const auto c = simulate_block(t, Hypothesis::Legitimate, rng2).samples;
  CHECK(std::any_of(c.begin(), c.end(), [&](Complex y) { return std::abs(std::norm(y) - std::norm(c.front())) > 1e-3; }));
}

TEST_CASE("simulate_subcarriers uses one substream per block") {
  ScenarioConfig s(40, 3, FadingMode::PerSample, 3, ChannelParams(1.0, 1.0, 1.0, 1.0, 0.5), RisConfig::uniform(2, 1.0));
  const RandomStream base(55);
  const auto blocks = simulate_subcarriers(s, Hypothesis::Legitimate, base);
  REQUIRE(blocks.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    RandomStream rng = base.substream(k);
    CHECK(blocks[k].samples == simulate_block(s, Hypothesis::Legitimate, rng).samples);
  }
  CHECK(blocks[0].samples != blocks[1].samples);
}

TEST_CASE("H0 received power equals equivalent-channel variance plus noise") {
  const ScenarioConfig s = fixtures::scenario(1, 8, 0.5, 0.4, 1.0, 0.3, 0.25);
  const auto t = oracle::moments(sample_rss(s, Hypothesis::Legitimate, 200000, RandomStream(4)));
  const double expected = lemma1_variance(s.ris(), s.channel()) + 0.25;
  CHECK(std::abs(t.mean - expected) < 3.0 * t.std_error);
}

TEST_CASE("block RSS is invariant to sample order") {
  const ScenarioConfig s = fixtures::scenario(512, 3, 0.5, 0.4, 1.0, 0.3, 0.25);
  RandomStream rng(10);
  auto samples = simulate_block(s, Hypothesis::Legitimate, rng).samples;
  const double before = rss(samples).value;
  std::mt19937_64 gen(1);
  std::shuffle(samples.begin(), samples.end(), gen);
  CHECK(rss(samples).value == Catch::Approx(before).epsilon(1e-14));
}
