#include "ris_sei/ris_optimizer.hpp"

#include <cmath>

#include "ris_sei/errors.hpp"

namespace ris_sei {

RisConfig coherent_config(std::size_t n_elements) {
  return RisConfig::uniform(n_elements, 1.0, 0.0, RisState::On);
}

namespace {

SweepRow evaluate_row(std::size_t n_elements, const ScenarioConfig& scenario, double target_pf,
                      VarianceMode mode, const CalibrationOptions& calibration) {
  SweepRow row;
  row.n_elements = n_elements;
  row.sigma_h_sq = lemma1_variance(scenario.ris(), scenario.channel());
  row.mu_delta1 = row.sigma_h_sq - scenario.channel().var_e();
  try {
    const HypothesisStats stats = derive_stats(scenario, mode, calibration);
    row.sigma_delta1 = stats.dt_h1().stddev();
    row.p_d_at_target_pf = detection_probability(threshold_for_target_pf(target_pf, stats), stats);
  } catch (const Error& e) {
    row.status = std::string(to_string(e.kind()));
  }
  return row;
}

}  // namespace

SweepResult sweep_size(const ChannelParams& params, std::size_t samples_per_block, const SizeRange& sizes,
                       double target_pf, VarianceMode mode, const SweepOptions& options) {
  if (sizes.first == 0 || sizes.last < sizes.first || sizes.step == 0) {
    throw Error(ErrorKind::DomainError, "n_range", "need 1 <= first <= last and step >= 1");
  }
  if (!(target_pf > 0.0 && target_pf < 1.0)) {
    throw Error(ErrorKind::DomainError, "target_pf", "must lie in (0,1)");
  }
  SweepResult result;
  result.target_pf = target_pf;
  const auto scenario_for = [&](RisConfig ris) {
    return ScenarioConfig(samples_per_block, 1, FadingMode::PerSample, options.seed, params, std::move(ris));
  };
  if (options.include_off_row) {
    result.rows.push_back(
        evaluate_row(0, scenario_for(ris_off(coherent_config(1))), target_pf, mode, options.calibration));
  }
  for (std::size_t n = sizes.first; n <= sizes.last; n += sizes.step) {
    result.rows.push_back(evaluate_row(n, scenario_for(coherent_config(n)), target_pf, mode, options.calibration));
  }
  return result;
}

}  // namespace ris_sei
