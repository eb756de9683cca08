#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace ris_sei {

struct RocPoint {
  double p_false_alarm = 0.0;
  double p_detection = 0.0;
  double threshold = 0.0;

  bool operator==(const RocPoint&) const = default;
};

enum class RocSource { Analytic, Empirical };

/// (P_f, P_d) pairs ordered by nondecreasing P_f. Empirical curves carry the
/// number of trials each probability was estimated from.
struct RocCurve {
  std::vector<RocPoint> points;
  RocSource source = RocSource::Analytic;
  std::size_t n_trials_per_point = 0;

  bool operator==(const RocCurve&) const = default;
};

std::string_view to_string(RocSource source);

/// `n_points` false-alarm targets, log-spaced over [1e-4, 1 - 1e-4].
std::vector<double> log_pf_grid(std::size_t n_points);

}  // namespace ris_sei
