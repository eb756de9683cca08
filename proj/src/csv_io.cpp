#include "ris_sei/csv_io.hpp"

#include <charconv>

#include <fmt/format.h>

#include "ris_sei/errors.hpp"

namespace ris_sei {

namespace {

constexpr std::string_view kRocHeader = "p_false_alarm,p_detection,source,threshold,n_trials";
constexpr std::string_view kSweepHeader =
    "n_elements,sigma_h_sq,mu_delta1,sigma_delta1,p_d_at_target_pf,target_pf,status";

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  while (true) {
    const auto at = line.find(sep);
    fields.push_back(line.substr(0, at));
    if (at == std::string_view::npos) break;
    line.remove_prefix(at + 1);
  }
  return fields;
}

std::vector<std::string_view> data_lines(std::string_view text, std::string_view header) {
  auto lines = split(text, '\n');
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || lines.front() != header) {
    throw Error(ErrorKind::MalformedDocument, "header", fmt::format("expected '{}'", header));
  }
  lines.erase(lines.begin());
  return lines;
}

template <typename T>
T parse_field(std::string_view field, std::string_view column) {
  T value{};
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorKind::MalformedDocument, std::string(column), fmt::format("bad value '{}'", field));
  }
  return value;
}

RocSource parse_source(std::string_view s) {
  if (s == "analytic") return RocSource::Analytic;
  if (s == "empirical") return RocSource::Empirical;
  throw Error(ErrorKind::MalformedDocument, "source", fmt::format("unknown source '{}'", s));
}

}  // namespace

std::string roc_csv(const std::vector<RocCurve>& curves) {
  std::string out(kRocHeader);
  out += '\n';
  for (const RocCurve& c : curves) {
    for (const RocPoint& p : c.points) {
      out += fmt::format("{},{},{},{},{}\n", p.p_false_alarm, p.p_detection, to_string(c.source), p.threshold,
                         c.n_trials_per_point);
    }
  }
  return out;
}

std::vector<RocCurve> parse_roc_csv(std::string_view text) {
  std::vector<RocCurve> curves;
  for (const auto line : data_lines(text, kRocHeader)) {
    const auto f = split(line, ',');
    if (f.size() != 5) throw Error(ErrorKind::MalformedDocument, "row", fmt::format("'{}'", line));
    const RocSource source = parse_source(f[2]);
    const auto n_trials = parse_field<std::size_t>(f[4], "n_trials");
    if (curves.empty() || curves.back().source != source || curves.back().n_trials_per_point != n_trials) {
      curves.push_back(RocCurve{{}, source, n_trials});
    }
    curves.back().points.push_back({parse_field<double>(f[0], "p_false_alarm"),
                                    parse_field<double>(f[1], "p_detection"),
                                    parse_field<double>(f[3], "threshold")});
  }
  return curves;
}

std::string sweep_csv(const SweepResult& sweep) {
  std::string out(kSweepHeader);
  out += '\n';
  for (const SweepRow& r : sweep.rows) {
    out += fmt::format("{},{},{},{},{},{},{}\n", r.n_elements, r.sigma_h_sq, r.mu_delta1, r.sigma_delta1,
                       r.p_d_at_target_pf ? fmt::format("{}", *r.p_d_at_target_pf) : std::string(),
                       sweep.target_pf, r.status);
  }
  return out;
}

SweepResult parse_sweep_csv(std::string_view text) {
  SweepResult sweep;
  bool first = true;
  for (const auto line : data_lines(text, kSweepHeader)) {
    const auto f = split(line, ',');
    if (f.size() != 7) throw Error(ErrorKind::MalformedDocument, "row", fmt::format("'{}'", line));
    SweepRow r;
    r.n_elements = parse_field<std::size_t>(f[0], "n_elements");
    r.sigma_h_sq = parse_field<double>(f[1], "sigma_h_sq");
    r.mu_delta1 = parse_field<double>(f[2], "mu_delta1");
    r.sigma_delta1 = parse_field<double>(f[3], "sigma_delta1");
    if (!f[4].empty()) r.p_d_at_target_pf = parse_field<double>(f[4], "p_d_at_target_pf");
    const double target = parse_field<double>(f[5], "target_pf");
    if (first) sweep.target_pf = target;
    first = false;
    r.status = std::string(f[6]);
    sweep.rows.push_back(std::move(r));
  }
  return sweep;
}

std::string stats_csv(const HypothesisStats& stats, bool with_header) {
  std::string out = with_header ? "mode,statistic,mean,variance\n" : "";
  const auto mode = to_string(stats.mode());
  const auto row = [&](std::string_view name, const GaussianStat& g) {
    out += fmt::format("{},{},{},{}\n", mode, name, g.mean(), g.variance());
  };
  if (stats.t_h0()) row("t_h0", *stats.t_h0());
  if (stats.t_h1()) row("t_h1", *stats.t_h1());
  row("dt_h0", stats.dt_h0());
  row("dt_h1", stats.dt_h1());
  out += fmt::format("{},sigma_h_sq,{},0\n", mode, stats.sigma_h_sq());
  return out;
}

}  // namespace ris_sei
