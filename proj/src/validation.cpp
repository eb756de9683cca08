#include "ris_sei/validation.hpp"

#include <cmath>

#include <fmt/format.h>

#include "ris_sei/analytic.hpp"
#include "ris_sei/csv_io.hpp"
#include "ris_sei/errors.hpp"
#include "ris_sei/experiment.hpp"
#include "ris_sei/random.hpp"

namespace ris_sei {

namespace {

ScenarioConfig make_scenario(std::size_t L, RisConfig ris, double var_ar, double var_rb, double var_a,
                             double var_e, double noise_var) {
  return ScenarioConfig(L, 1, FadingMode::PerSample, 0, ChannelParams(var_ar, var_rb, var_a, var_e, noise_var),
                        std::move(ris));
}

ScenarioConfig reference_scenario(std::uint64_t seed) {
  ExperimentDescriptor d;
  d.name = "experiment1";
  d.seed = seed;
  return experiment_scenario(d, RisState::On);
}

std::optional<std::size_t> first_above(const SweepResult& sweep, double level) {
  for (const auto& row : sweep.rows) {
    if (row.n_elements > 0 && row.p_d_at_target_pf && *row.p_d_at_target_pf > level) return row.n_elements;
  }
  return std::nullopt;
}

std::string opt(const std::optional<double>& v) { return v ? fmt::format("{}", *v) : std::string(); }

}  // namespace

double VarianceAdjudication::seed_relative_difference() const {
  return std::abs(empirical_seed_a - empirical_seed_b) / empirical();
}

std::optional<double> VarianceAdjudication::ratio_to_paper() const {
  if (!(paper_exact > 0.0)) return std::nullopt;
  return empirical() / paper_exact;
}

std::vector<ScenarioConfig> adjudication_scenarios() {
  const auto coherent = [](std::size_t n) { return RisConfig::uniform(n, 1.0); };
  const auto off = [](std::size_t n) { return RisConfig::uniform(n, 1.0, 0.0, RisState::Off); };
  return {
      make_scenario(1000, off(1), 1.0, 1.0, 1.0, 1.0, 0.1),
      make_scenario(20, off(1), 1.0, 1.0, 1.0, 1.0, 1.0),
      make_scenario(20, off(1), 1.0, 1.0, 2.0, 1.0, 0.5),
      make_scenario(20, coherent(1), 1.0, 1.0, 0.0, 1.0, 0.1),
      make_scenario(20, coherent(4), 0.5, 0.5, 1.0, 1.0, 0.5),
      make_scenario(20, RisConfig::uniform(8, 0.5, 1.0), 1.0, 1.0, 0.5, 1.0, 1.0),
      make_scenario(20, coherent(16), 0.3, 0.3, 1.0, 0.25, 0.5),
      make_scenario(20, off(16), 0.3, 0.3, 1.0, 0.25, 0.5),
      make_scenario(20, coherent(2), 1.0, 2.0, 0.2, 1.0, 2.0),
      make_scenario(20, coherent(32), 0.1, 0.1, 1.0, 1.0, 0.25),
  };
}

VarianceAdjudication adjudicate_variance(const ScenarioConfig& scenario, std::uint64_t seed_a,
                                         std::uint64_t seed_b, std::size_t n_trials, unsigned threads) {
  const ChannelParams& p = scenario.channel();
  VarianceAdjudication v;
  v.n_elements = scenario.ris().is_on() ? scenario.ris().n_elements() : 0;
  v.samples_per_block = scenario.samples_per_block();
  v.sigma_h_sq = lemma1_variance(scenario.ris(), p);
  v.noise_var = p.noise_var();
  v.label = fmt::format("N={} L={} sigma_h_sq={} noise_var={}", v.n_elements, v.samples_per_block, v.sigma_h_sq,
                        v.noise_var);
  const auto estimate = [&](std::uint64_t seed) {
    return compute_moments(sample_rss(scenario, Hypothesis::Legitimate, n_trials,
                                      RandomStream(seed).substream(stream_tag::kRssH0), threads))
        .variance;
  };
  v.empirical_seed_a = estimate(seed_a);
  v.empirical_seed_b = estimate(seed_b);
  // Published closed form evaluated verbatim, sign included.
  const double L = static_cast<double>(scenario.samples_per_block());
  const double mu0 = v.sigma_h_sq + v.noise_var;
  v.paper_exact = (2.0 * v.sigma_h_sq * v.sigma_h_sq + 2.0 * v.noise_var * v.noise_var - mu0 * mu0) / L;
  v.mu0_sq_over_l = mu0 * mu0 / L;
  v.fourth_moment = rss_variance_fourth_moment(scenario, Hypothesis::Legitimate);
  return v;
}

ValidationReport run_validation(const ValidationOptions& o) {
  ValidationReport report;
  report.options = o;
  const RandomStream root = RandomStream(o.seed).substream(stream_tag::kValidation);

  // Equivalent-channel variance against randomly drawn configurations.
  {
    RandomStream pick = root.substream(1);
    const auto uniform01 = [&pick] { return static_cast<double>(pick() >> 11) * 0x1.0p-53; };
    for (std::size_t i = 0; i < 5; ++i) {
      const std::size_t n = 1 + static_cast<std::size_t>(uniform01() * 64.0);
      std::vector<double> amps(n), phases(n);
      for (std::size_t k = 0; k < n; ++k) {
        amps[k] = uniform01();
        phases[k] = uniform01() * 6.283185307179586 * 0.999;
      }
      const RisConfig ris(amps, phases);
      const ChannelParams params(0.01 + 3.99 * uniform01(), 0.01 + 3.99 * uniform01(), 0.01 + 3.99 * uniform01(),
                                 1.0, 1.0);
      const auto h = sample_equivalent_channel(ris, params, o.trials, root.substream(100 + i), o.threads);
      std::vector<double> power(h.size());
      for (std::size_t k = 0; k < h.size(); ++k) power[k] = std::norm(h[k]);
      const Moments m = compute_moments(power);
      LemmaCheck c{n, params.var_ar(), params.var_rb(), params.var_a(), lemma1_variance(ris, params), m.mean,
                   m.std_error_mean, 0.0};
      c.gap = std::abs(c.empirical - c.analytic) / c.std_error;
      report.lemma.push_back(c);
    }
  }

  // Means of T and dT under both hypotheses for the reference scenario.
  const ScenarioConfig ref = reference_scenario(o.seed);
  const HypothesisStats analytic_means = derive_stats(ref, VarianceMode::PaperExact);
  {
    const auto add = [&](const char* name, double analytic, std::vector<double> draws) {
      const Moments m = compute_moments(draws);
      report.means.push_back({name, analytic, m.mean, m.std_error_mean,
                              std::abs(m.mean - analytic) / m.std_error_mean});
    };
    const RandomStream base = root.substream(2);
    add("t_h0", analytic_means.t_h0()->mean(),
        sample_rss(ref, Hypothesis::Legitimate, o.trials, base.substream(stream_tag::kRssH0), o.threads));
    add("t_h1", analytic_means.t_h1()->mean(),
        sample_rss(ref, Hypothesis::Spoofing, o.trials, base.substream(stream_tag::kRssH1), o.threads));
    add("dt_h0", 0.0,
        sample_delta(ref, Hypothesis::Legitimate, o.trials, base.substream(stream_tag::kDeltaH0), o.threads));
    add("dt_h1", analytic_means.dt_h1().mean(),
        sample_delta(ref, Hypothesis::Spoofing, o.trials, base.substream(stream_tag::kDeltaH1), o.threads));
  }

  // Var(T): published closed form vs empirical under two seeds.
  {
    const auto sets = adjudication_scenarios();
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const RandomStream s = root.substream(300 + i);
      report.variances.push_back(
          adjudicate_variance(sets[i], s.substream(0).key(), s.substream(1).key(), o.variance_trials, o.threads));
    }
  }

  // Gaussianity of T and dT.
  {
    const ScenarioConfig g = ref.with_seed(root.substream(4).key());
    const auto entry = [&](std::string label, bool permitted, auto&& make_summary, auto&& make_target) {
      GaussianityEntry e;
      e.label = std::move(label);
      e.failure_permitted = permitted;
      try {
        const EmpiricalSummary summary = make_summary();
        e.check = validate_gaussianity(summary, make_target());
      } catch (const Error& err) {
        e.status = std::string(to_string(err.kind()));
      }
      report.gaussianity.push_back(std::move(e));
    };
    const CalibrationOptions cal{o.trials, o.threads};
    const HypothesisStats calibrated = derive_stats(g, VarianceMode::OracleCalibrated, cal);
    const auto t_h0 = [&] { return empirical_t_distribution(g, Hypothesis::Legitimate, o.trials, o.threads); };
    entry("t_h0 vs oracle_calibrated", false, t_h0, [&] { return *calibrated.t_h0(); });
    entry("t_h0 vs paper_exact", true, t_h0, [&] { return *derive_stats(g, VarianceMode::PaperExact).t_h0(); });
    entry("dt_h0 vs oracle_calibrated", false,
          [&] { return empirical_delta_distribution(g, Hypothesis::Legitimate, o.trials, o.threads); },
          [&] { return calibrated.dt_h0(); });
    entry("dt_h1 vs oracle_calibrated", false,
          [&] { return empirical_delta_distribution(g, Hypothesis::Spoofing, o.trials, o.threads); },
          [&] { return calibrated.dt_h1(); });
    const ScenarioConfig small = g.with_samples_per_block(10);
    const HypothesisStats small_cal = derive_stats(small, VarianceMode::OracleCalibrated, cal);
    entry("t_h0 at L=10 vs oracle_calibrated", true,
          [&] { return empirical_t_distribution(small, Hypothesis::Legitimate, o.trials, o.threads); },
          [&] { return *small_cal.t_h0(); });
  }

  // RIS size sweep at the experiment-2 defaults.
  {
    ExperimentDescriptor d;
    d.name = "experiment2";
    d.seed = o.seed;
    const ScenarioConfig e2 = experiment_scenario(d, RisState::On);
    report.sweep_paper =
        sweep_size(e2.channel(), e2.samples_per_block(), {1, 64, 1}, 0.1, VarianceMode::PaperExact);
    SweepOptions so;
    so.seed = root.substream(5).key();
    so.calibration = {o.trials, o.threads};
    SweepResult cal;
    cal.target_pf = 0.1;
    for (std::size_t n = 1; n <= 32; n *= 2) {
      SweepOptions row_opts = so;
      row_opts.include_off_row = n == 1;
      auto part = sweep_size(e2.channel(), e2.samples_per_block(), {n, n, 1}, 0.1, VarianceMode::OracleCalibrated,
                             row_opts);
      cal.rows.insert(cal.rows.end(), part.rows.begin(), part.rows.end());
    }
    report.sweep_calibrated = std::move(cal);
    report.first_n_above_0_9_paper = first_above(report.sweep_paper, 0.9);
    report.first_n_above_0_9_calibrated = first_above(report.sweep_calibrated, 0.9);
  }
  return report;
}

std::string render_validation_report(const ValidationReport& r) {
  std::string out;
  out += "# validation report\n";
  out += fmt::format("seed = {}\ntrials = {}\nvariance_trials = {}\n\n", r.options.seed, r.options.trials,
                     r.options.variance_trials);

  out += "[equivalent-channel variance]\n";
  for (const auto& c : r.lemma) {
    out += fmt::format("  N={:<3} analytic={:.6f} empirical={:.6f} gap={:.3f} se  {}\n", c.n_elements, c.analytic,
                       c.empirical, c.gap, c.gap < 3.0 ? "PASS" : "FAIL");
  }
  out += "\n[means of T and dT]\n";
  for (const auto& m : r.means) {
    out += fmt::format("  {:<6} analytic={:.6f} empirical={:.6f} gap={:.3f} se  {}\n", m.statistic, m.analytic,
                       m.empirical, m.gap, m.gap < 4.0 ? "PASS" : "FAIL");
  }
  out += "\n[variance of T: empirical / reference]\n";
  for (const auto& v : r.variances) {
    const auto rp = v.ratio_to_paper();
    out += fmt::format("  {:<44} paper={} mu0^2/L={:.4f} fourth_moment={:.4f} seeds_rel_diff={:.4f}\n", v.label,
                       rp ? fmt::format("{:.4f}", *rp) : std::string("n/a (closed form <= 0)"),
                       v.ratio_to_mu0_sq(), v.ratio_to_fourth_moment(), v.seed_relative_difference());
  }
  out += "\n[gaussianity]\n";
  for (const auto& g : r.gaussianity) {
    if (!g.check) {
      out += fmt::format("  {:<36} {}\n", g.label, g.status);
      continue;
    }
    const auto& c = *g.check;
    const bool pass = c.mean_ok && c.cdf_ok;
    out += fmt::format("  {:<36} mean_gap={:.3f} var_ratio={:.4f} cdf_gap={:.4f}  {}{}\n", g.label, c.mean_gap,
                       c.variance_ratio, c.cdf_gap, pass ? "PASS" : "FAIL",
                       g.failure_permitted && !pass ? " (permitted)" : "");
  }
  const auto n_or_none = [](const std::optional<std::size_t>& n) {
    return n ? fmt::format("{}", *n) : std::string("none in range");
  };
  out += "\n[ris size sweep, experiment-2 defaults, P_f = 0.1]\n";
  out += fmt::format("  first N with P_d > 0.9 (paper_exact)       = {}\n", n_or_none(r.first_n_above_0_9_paper));
  out += fmt::format("  first N with P_d > 0.9 (oracle_calibrated) = {}\n\n",
                     n_or_none(r.first_n_above_0_9_calibrated));

  out += "## csv:variance\n";
  out += "n_elements,samples_per_block,sigma_h_sq,noise_var,empirical_seed_a,empirical_seed_b,paper_exact,"
         "mu0_sq_over_l,fourth_moment,ratio_paper,ratio_mu0_sq,ratio_fourth_moment\n";
  for (const auto& v : r.variances) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", v.n_elements, v.samples_per_block, v.sigma_h_sq,
                       v.noise_var, v.empirical_seed_a, v.empirical_seed_b, v.paper_exact, v.mu0_sq_over_l,
                       v.fourth_moment, opt(v.ratio_to_paper()), v.ratio_to_mu0_sq(), v.ratio_to_fourth_moment());
  }
  out += "\n## csv:sweep_paper_exact\n" + sweep_csv(r.sweep_paper);
  out += "\n## csv:sweep_oracle_calibrated\n" + sweep_csv(r.sweep_calibrated);
  return out;
}

}  // namespace ris_sei
