#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>

#include "fixtures.hpp"
#include "ris_sei/analytic.hpp"
#include "ris_sei/channel.hpp"
#include "ris_sei/csv_io.hpp"
#include "ris_sei/detector.hpp"
#include "ris_sei/random.hpp"
#include "ris_sei/ris_optimizer.hpp"
#include "ris_sei/trace_io.hpp"

using namespace ris_sei;
using fixtures::error_of;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "ris_sei_unit";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("trace layout is bit exact") {
  const std::string bytes = encode_trace(std::vector<Complex>{{1.0, -2.0}}, 1000000);
  REQUIRE(bytes.size() == kTraceHeaderBytes + 8);
  CHECK(bytes.substr(0, 8) == "RISSEIQ1");
  CHECK(static_cast<unsigned char>(bytes[8]) == 0x40);  // 1e6 = 0x0F4240, little-endian
  CHECK(static_cast<unsigned char>(bytes[9]) == 0x42);
  CHECK(static_cast<unsigned char>(bytes[10]) == 0x0F);
  CHECK(static_cast<unsigned char>(bytes[16]) == 1);
  CHECK(static_cast<unsigned char>(bytes[27]) == 0x3F);  // 1.0f = 0x3F800000
  CHECK(static_cast<unsigned char>(bytes[31]) == 0xC0);  // -2.0f = 0xC0000000
}

TEST_CASE("trace round trip is bitwise for float32 samples") {
  std::mt19937_64 gen(1);
  std::normal_distribution<float> n;
  std::vector<Complex> samples(4096);
  for (auto& c : samples) c = {n(gen), n(gen)};
  const fs::path p = scratch("round.iq");
  write_trace(p, samples, 2500000);
  const Trace t = read_trace(p);
  CHECK(t.sample_rate_hz == 2500000);
  CHECK(t.block.samples == samples);
  CHECK_FALSE(t.block.hypothesis.has_value());
  CHECK_FALSE(fs::exists(p.string() + ".tmp"));
}

TEST_CASE("trace errors") {
  std::string good = encode_trace(std::vector<Complex>(3, Complex(1, 1)), 10);
  std::string bad = good;
  bad[0] = 'X';
  CHECK(error_of([&] { decode_trace(bad); }).first == ErrorKind::BadMagic);
  CHECK(error_of([&] { decode_trace(good.substr(0, good.size() - 1)); }).first == ErrorKind::TruncatedPayload);
  CHECK(error_of([&] { decode_trace(good.substr(0, 12)); }).first == ErrorKind::TruncatedPayload);
  CHECK(error_of([] { read_trace(scratch("does-not-exist.iq")); }).first == ErrorKind::UnreadablePath);
  CHECK(error_of([] { read_trace(fs::temp_directory_path()); }).first == ErrorKind::UnreadablePath);
}

TEST_CASE("an empty trace reads and fails on use") {
  const fs::path p = scratch("empty.iq");
  write_trace(p, std::vector<Complex>{}, 1);
  const Trace t = read_trace(p);
  CHECK(t.block.samples.empty());
  CHECK(error_of([&] { rss(t.block); }).first == ErrorKind::EmptyBlock);
}

TEST_CASE("detection from traces agrees with the in-memory path") {
  const ScenarioConfig s = fixtures::scenario(200, 8, 0.25, 0.25, 1.0, 0.5, 0.5, 21);
  const double eps = optimal_threshold(derive_stats(s, VarianceMode::OracleCalibrated, {20000, 0})).value;
  RandomStream rng(5);
  for (int i = 0; i < 20; ++i) {
    const auto ref = simulate_block(s, Hypothesis::Legitimate, rng);
    const auto obs = simulate_block(s, i % 2 ? Hypothesis::Spoofing : Hypothesis::Legitimate, rng);
    write_trace(scratch("ref.iq"), ref.samples, 1);
    write_trace(scratch("obs.iq"), obs.samples, 1);
    const Decision memory = decide(delta_t(rss(ref), rss(obs)), eps);
    const Decision file = decide(delta_t(rss(read_trace(scratch("ref.iq")).block), rss(read_trace(scratch("obs.iq")).block)), eps);
    CHECK(memory.verdict == file.verdict);
    CHECK(file.statistic.delta == Catch::Approx(memory.statistic.delta).margin(1e-5));
  }
}

TEST_CASE("ROC CSV round trip") {
  const RocCurve analytic = analytic_roc(HypothesisStats::for_delta(0.3, 1.0, 0.2), 7);
  RocCurve empirical{{{0.1, 0.5, 0.3}, {0.25, 0.75, -0.1}}, RocSource::Empirical, 4};
  const std::string csv = roc_csv({analytic, empirical});
  CHECK(csv.starts_with("p_false_alarm,p_detection,source,threshold,n_trials\n"));
  const auto back = parse_roc_csv(csv);
  REQUIRE(back.size() == 2);
  CHECK(back[0].source == RocSource::Analytic);
  CHECK(back[1].n_trials_per_point == 4);
  REQUIRE(back[0].points.size() == analytic.points.size());
  for (std::size_t i = 0; i < analytic.points.size(); ++i) {
    CHECK(back[0].points[i].p_false_alarm == analytic.points[i].p_false_alarm);
    CHECK(back[0].points[i].p_detection == analytic.points[i].p_detection);
    CHECK(back[0].points[i].threshold == analytic.points[i].threshold);
  }
  CHECK(roc_csv(back) == csv);
  CHECK(error_of([] { parse_roc_csv("wrong,header\n"); }).first == ErrorKind::MalformedDocument);
}

TEST_CASE("sweep CSV round trip") {
  const SweepResult r =
      sweep_size(ChannelParams(0.5, 0.5, 0.25, 0.25, 0.5), 20, {1, 5, 2}, 0.05, VarianceMode::PaperExact);
  const std::string csv = sweep_csv(r);
  CHECK(csv.starts_with("n_elements,sigma_h_sq,mu_delta1,sigma_delta1,p_d_at_target_pf,target_pf,status\n"));
  const SweepResult back = parse_sweep_csv(csv);
  REQUIRE(back.rows.size() == r.rows.size());
  CHECK(back.target_pf == 0.05);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    CHECK(back.rows[i].n_elements == r.rows[i].n_elements);
    CHECK(back.rows[i].sigma_delta1 == r.rows[i].sigma_delta1);
    CHECK(back.rows[i].p_d_at_target_pf == r.rows[i].p_d_at_target_pf);
    CHECK(back.rows[i].status == r.rows[i].status);
  }
  CHECK(sweep_csv(back) == csv);
}

TEST_CASE("stats CSV lists every statistic") {
  const std::string csv = stats_csv(paper_exact_stats(2.0, 0.5, 0.5, 10));
  CHECK(csv.starts_with("mode,statistic,mean,variance\n"));
  for (const char* name : {"t_h0", "t_h1", "dt_h0", "dt_h1", "sigma_h_sq"}) {
    CHECK(csv.find(std::string("paper_exact,") + name + ",") != std::string::npos);
  }
  CHECK(stats_csv(paper_exact_stats(2.0, 0.5, 0.5, 10), false).find("mode,") == std::string::npos);
}

TEST_CASE("atomic writes replace the file") {
  const fs::path p = scratch("atomic.txt");
  write_file_atomic(p, "first");
  write_file_atomic(p, "second");
  CHECK(read_file(p) == "second");
  CHECK_FALSE(fs::exists(p.string() + ".tmp"));
}
