#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ris_sei/analytic.hpp"
#include "ris_sei/types.hpp"

namespace ris_sei {

/// alpha_n = 1 and theta_n = 0 on every element, RIS on. Maximises the
/// equivalent-channel variance for a given size.
RisConfig coherent_config(std::size_t n_elements);

struct SweepRow {
  std::size_t n_elements = 0;  // 0 is the RIS-off reference row
  double sigma_h_sq = 0.0;
  double mu_delta1 = 0.0;
  double sigma_delta1 = 0.0;
  std::optional<double> p_d_at_target_pf;  // empty when the row failed
  std::string status = "ok";               // "ok" or the error kind that blocked the row

  /// mu_delta1 / sigma_delta1, the standardized separation of dT under H1.
  double separation() const { return sigma_delta1 > 0.0 ? mu_delta1 / sigma_delta1 : 0.0; }
};

struct SweepResult {
  std::vector<SweepRow> rows;  // ascending n_elements
  double target_pf = 0.1;
};

struct SizeRange {
  std::size_t first = 1;
  std::size_t last = 1;
  std::size_t step = 1;
};

struct SweepOptions {
  std::uint64_t seed = 0;                // OracleCalibrated only
  CalibrationOptions calibration{};      // OracleCalibrated only
  bool include_off_row = true;
};

/// Evaluates coherent_config(N) for every N in `sizes` (plus a leading RIS-off
/// row with n_elements = 0) and reports P_d at the target false-alarm threshold.
/// Per-row failures are recorded in the row instead of thrown.
SweepResult sweep_size(const ChannelParams& params, std::size_t samples_per_block, const SizeRange& sizes,
                       double target_pf, VarianceMode mode, const SweepOptions& options = {});

}  // namespace ris_sei
