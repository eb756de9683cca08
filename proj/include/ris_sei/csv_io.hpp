#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ris_sei/analytic.hpp"
#include "ris_sei/ris_optimizer.hpp"
#include "ris_sei/roc.hpp"

namespace ris_sei {

// Column layouts:
//   roc:   p_false_alarm,p_detection,source,threshold,n_trials
//   sweep: n_elements,sigma_h_sq,mu_delta1,sigma_delta1,p_d_at_target_pf,target_pf,status
//   stats: mode,statistic,mean,variance
// Reals are written in shortest round-trip form.

std::string roc_csv(const std::vector<RocCurve>& curves);

/// One curve per contiguous run of rows with the same source.
std::vector<RocCurve> parse_roc_csv(std::string_view text);

std::string sweep_csv(const SweepResult& sweep);
SweepResult parse_sweep_csv(std::string_view text);

/// `with_header` false appends rows only.
std::string stats_csv(const HypothesisStats& stats, bool with_header = true);

}  // namespace ris_sei
