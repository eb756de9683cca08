#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ris_sei/analytic.hpp"
#include "ris_sei/channel.hpp"
#include "ris_sei/csv_io.hpp"
#include "ris_sei/detector.hpp"
#include "ris_sei/errors.hpp"
#include "ris_sei/experiment.hpp"
#include "ris_sei/monte_carlo.hpp"
#include "ris_sei/ris_optimizer.hpp"
#include "ris_sei/scenario.hpp"
#include "ris_sei/trace_io.hpp"

namespace py = pybind11;
using namespace ris_sei;

namespace {

py::array_t<std::complex<double>> to_array(const std::vector<Complex>& v) {
  py::array_t<std::complex<double>> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

std::vector<Complex> from_array(const py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 1) throw py::value_error("expected a one-dimensional array of samples");
  return {a.data(), a.data() + a.size()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "RIS-assisted RSS spoofing detection";
  m.attr("__version__") = "0.1.0";

  // Held as a bare handle so no Python object is destroyed after interpreter shutdown.
  static py::handle error = py::exception<Error>(m, "RisSeiError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error)(py::str(e.what()));
      exc.attr("kind") = std::string(to_string(e.kind()));
      exc.attr("subject") = e.subject();
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  py::enum_<RisState>(m, "RisState").value("On", RisState::On).value("Off", RisState::Off);
  py::enum_<FadingMode>(m, "FadingMode")
      .value("PerSample", FadingMode::PerSample)
      .value("PerBlock", FadingMode::PerBlock);
  py::enum_<Hypothesis>(m, "Hypothesis")
      .value("Legitimate", Hypothesis::Legitimate)
      .value("Spoofing", Hypothesis::Spoofing);
  py::enum_<VarianceMode>(m, "VarianceMode")
      .value("PaperExact", VarianceMode::PaperExact)
      .value("OracleCalibrated", VarianceMode::OracleCalibrated);
  py::enum_<Verdict>(m, "Verdict").value("Normal", Verdict::Normal).value("UnderAttack", Verdict::UnderAttack);

  py::class_<RisConfig>(m, "RisConfig")
      .def(py::init<std::vector<double>, std::vector<double>, RisState>(), py::arg("amplitudes"),
           py::arg("phases"), py::arg("state") = RisState::On)
      .def_static("uniform", &RisConfig::uniform, py::arg("n_elements"), py::arg("amplitude"),
                  py::arg("phase") = 0.0, py::arg("state") = RisState::On)
      .def_property_readonly("n_elements", &RisConfig::n_elements)
      .def_property_readonly("amplitudes",
                             [](const RisConfig& c) { return std::vector<double>(c.amplitudes().begin(), c.amplitudes().end()); })
      .def_property_readonly("phases",
                             [](const RisConfig& c) { return std::vector<double>(c.phases().begin(), c.phases().end()); })
      .def_property_readonly("state", &RisConfig::state)
      .def("with_state", &RisConfig::with_state)
      .def(py::self == py::self);
  m.def("ris_off", &ris_off);
  m.def("coherent_config", &coherent_config, py::arg("n_elements"));

  py::class_<ChannelParams>(m, "ChannelParams")
      .def(py::init<double, double, double, double, double>(), py::arg("var_ar"), py::arg("var_rb"),
           py::arg("var_a"), py::arg("var_e"), py::arg("noise_var"))
      .def_property_readonly("var_ar", &ChannelParams::var_ar)
      .def_property_readonly("var_rb", &ChannelParams::var_rb)
      .def_property_readonly("var_a", &ChannelParams::var_a)
      .def_property_readonly("var_e", &ChannelParams::var_e)
      .def_property_readonly("noise_var", &ChannelParams::noise_var)
      .def(py::self == py::self);

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<std::size_t, std::size_t, FadingMode, std::uint64_t, ChannelParams, RisConfig>(),
           py::arg("samples_per_block"), py::arg("n_subcarriers"), py::arg("fading_mode"), py::arg("seed"),
           py::arg("channel"), py::arg("ris"))
      .def_property_readonly("samples_per_block", &ScenarioConfig::samples_per_block)
      .def_property_readonly("n_subcarriers", &ScenarioConfig::n_subcarriers)
      .def_property_readonly("fading_mode", &ScenarioConfig::fading_mode)
      .def_property_readonly("seed", &ScenarioConfig::seed)
      .def_property_readonly("channel", &ScenarioConfig::channel)
      .def_property_readonly("ris", &ScenarioConfig::ris)
      .def("with_seed", &ScenarioConfig::with_seed)
      .def("with_ris", &ScenarioConfig::with_ris)
      .def(py::self == py::self);
  m.def("parse_scenario", &parse_scenario, py::arg("text"), py::arg("fallback_seed") = std::nullopt);
  m.def("serialize_scenario", &serialize_scenario);

  py::class_<GaussianStat>(m, "GaussianStat")
      .def(py::init<double, double>(), py::arg("mean"), py::arg("variance"))
      .def_property_readonly("mean", &GaussianStat::mean)
      .def_property_readonly("variance", &GaussianStat::variance)
      .def_property_readonly("stddev", &GaussianStat::stddev);

  py::class_<HypothesisStats>(m, "HypothesisStats")
      .def_static("for_delta", &HypothesisStats::for_delta, py::arg("var_dt0"), py::arg("mean_dt1"),
                  py::arg("var_dt1"), py::arg("mode") = VarianceMode::PaperExact)
      .def_property_readonly("t_h0", &HypothesisStats::t_h0)
      .def_property_readonly("t_h1", &HypothesisStats::t_h1)
      .def_property_readonly("dt_h0", &HypothesisStats::dt_h0)
      .def_property_readonly("dt_h1", &HypothesisStats::dt_h1)
      .def_property_readonly("sigma_h_sq", &HypothesisStats::sigma_h_sq)
      .def_property_readonly("mode", &HypothesisStats::mode);

  m.def("lemma1_variance", &lemma1_variance, py::arg("ris"), py::arg("params"));
  m.def("paper_exact_stats", &paper_exact_stats, py::arg("sigma_h_sq"), py::arg("var_e"), py::arg("noise_var"),
        py::arg("samples_per_block"));
  m.def(
      "derive_stats",
      [](const ScenarioConfig& s, VarianceMode mode, std::size_t n_trials, unsigned threads) {
        py::gil_scoped_release release;
        return derive_stats(s, mode, {n_trials, threads});
      },
      py::arg("scenario"), py::arg("mode"), py::arg("n_trials") = 100000, py::arg("threads") = 0);
  m.def("q_function", &q_function);
  m.def("q_inverse", &q_inverse);
  m.def("detection_probability", &detection_probability, py::arg("threshold"), py::arg("stats"));
  m.def("false_alarm_probability", &false_alarm_probability, py::arg("threshold"), py::arg("stats"));
  m.def("threshold_for_target_pf", &threshold_for_target_pf, py::arg("p_false_alarm"), py::arg("stats"));
  m.def("overall_error", &overall_error, py::arg("threshold"), py::arg("stats"));
  m.def("optimal_threshold", [](const HypothesisStats& s) { return optimal_threshold(s).value; });

  py::class_<RocPoint>(m, "RocPoint")
      .def_readonly("p_false_alarm", &RocPoint::p_false_alarm)
      .def_readonly("p_detection", &RocPoint::p_detection)
      .def_readonly("threshold", &RocPoint::threshold);
  py::class_<RocCurve>(m, "RocCurve")
      .def_readonly("points", &RocCurve::points)
      .def_property_readonly("source", [](const RocCurve& c) { return std::string(to_string(c.source)); })
      .def_readonly("n_trials_per_point", &RocCurve::n_trials_per_point);
  m.def("analytic_roc", &analytic_roc, py::arg("stats"), py::arg("n_points") = 20);
  m.def(
      "empirical_roc",
      [](const ScenarioConfig& s, std::vector<double> thresholds, std::size_t n_trials, unsigned threads) {
        py::gil_scoped_release release;
        return empirical_roc(s, thresholds, n_trials, threads);
      },
      py::arg("scenario"), py::arg("thresholds"), py::arg("n_trials"), py::arg("threads") = 0);
  m.def("roc_csv", &roc_csv);

  m.def(
      "simulate_block",
      [](const ScenarioConfig& s, Hypothesis h, std::uint64_t seed) {
        RandomStream rng(seed);
        return to_array(simulate_block(s, h, rng).samples);
      },
      py::arg("scenario"), py::arg("hypothesis"), py::arg("seed"),
      "Received samples of one block drawn from a stream seeded with `seed`.");
  m.def(
      "sample_delta",
      [](const ScenarioConfig& s, Hypothesis h, std::size_t n_trials, std::uint64_t seed, unsigned threads) {
        py::gil_scoped_release release;
        return sample_delta(s, h, n_trials, RandomStream(seed), threads);
      },
      py::arg("scenario"), py::arg("hypothesis"), py::arg("n_trials"), py::arg("seed"), py::arg("threads") = 0);
  m.def(
      "rss", [](const py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>& a) {
        return rss(std::span<const Complex>(from_array(a))).value;
      },
      py::arg("samples"));
  m.def(
      "detect",
      [](const py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>& reference,
         const py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>& observation,
         double threshold) {
        const auto ref = from_array(reference);
        const auto obs = from_array(observation);
        const Decision d = decide(delta_t(rss(std::span<const Complex>(ref)), rss(std::span<const Complex>(obs))), threshold);
        return py::make_tuple(d.verdict, d.statistic.delta);
      },
      py::arg("reference"), py::arg("observation"), py::arg("threshold"),
      "Returns (verdict, delta) for reference RSS minus observed RSS against `threshold`.");

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("n_elements", &SweepRow::n_elements)
      .def_readonly("sigma_h_sq", &SweepRow::sigma_h_sq)
      .def_readonly("mu_delta1", &SweepRow::mu_delta1)
      .def_readonly("sigma_delta1", &SweepRow::sigma_delta1)
      .def_readonly("p_d_at_target_pf", &SweepRow::p_d_at_target_pf)
      .def_readonly("status", &SweepRow::status);
  m.def(
      "sweep_size",
      [](const ChannelParams& params, std::size_t samples_per_block, std::size_t first, std::size_t last,
         std::size_t step, double target_pf, VarianceMode mode, std::uint64_t seed, std::size_t n_trials) {
        py::gil_scoped_release release;
        SweepOptions o;
        o.seed = seed;
        o.calibration.n_trials = n_trials;
        return sweep_size(params, samples_per_block, {first, last, step}, target_pf, mode, o).rows;
      },
      py::arg("params"), py::arg("samples_per_block"), py::arg("first"), py::arg("last"), py::arg("step") = 1,
      py::arg("target_pf") = 0.1, py::arg("mode") = VarianceMode::PaperExact, py::arg("seed") = 0,
      py::arg("n_trials") = 100000);

  m.def(
      "write_trace",
      [](const std::filesystem::path& path,
         const py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>& samples,
         std::uint64_t sample_rate_hz) { write_trace(path, from_array(samples), sample_rate_hz); },
      py::arg("path"), py::arg("samples"), py::arg("sample_rate_hz"));
  m.def(
      "read_trace",
      [](const std::filesystem::path& path) {
        const Trace t = read_trace(path);
        return py::make_tuple(to_array(t.block.samples), t.sample_rate_hz);
      },
      py::arg("path"));

  m.def(
      "run_experiment",
      [](const std::string& name, std::uint64_t seed, std::size_t n_trials, std::size_t grid_points,
         unsigned threads) {
        ExperimentDescriptor d;
        d.name = name;
        d.seed = seed;
        d.n_trials = n_trials;
        d.grid_points = grid_points;
        d.threads = threads;
        py::gil_scoped_release release;
        return render_experiment_report(run_experiment_suite(d));
      },
      py::arg("name"), py::arg("seed"), py::arg("n_trials") = ExperimentDefaults::kTrials,
      py::arg("grid_points") = ExperimentDefaults::kGridPoints, py::arg("threads") = 0,
      "Runs a named experiment and returns its rendered report.");
}
