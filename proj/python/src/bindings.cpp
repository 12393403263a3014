#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "srsbs/detector.hpp"
#include "srsbs/error.hpp"
#include "srsbs/harness.hpp"
#include "srsbs/io.hpp"
#include "srsbs/srs.hpp"
#include "srsbs/tag.hpp"

namespace py = pybind11;
using namespace srsbs;

namespace {

std::vector<double> as_real(const Code& code) { return {code.begin(), code.end()}; }

py::dict interval(const Interval& i) {
    py::dict d;
    d["lower"] = i.lower;
    d["upper"] = i.upper;
    return d;
}

}  // namespace

PYBIND11_MODULE(_srsbs, m) {
    m.doc() = "SRS ambient backscatter simulator and detector";
    m.attr("__version__") = std::string(kToolVersion);

    static py::exception<ConfigError> config_error(m, "ConfigError", PyExc_ValueError);
    static py::exception<IoError> io_error(m, "IoError", PyExc_OSError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ConfigError& e) {
            py::set_error(config_error, e.what());
        } catch (const IoError& e) {
            py::set_error(io_error, e.what());
        }
    });

    // Signal and codes
    m.def("zc_base", [](unsigned root, unsigned base_length, unsigned target_length) {
        return generate_zc_base({root, base_length, target_length});
    }, py::arg("root") = 25, py::arg("base_length") = 139, py::arg("target_length") = 144);
    m.def("srs_symbol", [](unsigned root) { return make_srs_symbol({root, 139, 144}).values; },
          py::arg("root") = 25);
    m.def("gold_codes", [] { return GoldCodeSet::standard().codes(); });
    m.def("encode_repetition", [](const Code& code, std::size_t v) { return encode_repetition(code, v).samples; },
          py::arg("code"), py::arg("v") = kDefaultRepetitions);
    m.def("decode_repetition", [](const Code& samples, std::size_t v) { return decode_repetition(samples, v); },
          py::arg("samples"), py::arg("v") = kDefaultRepetitions);
    m.def("pearson", [](const std::vector<double>& t, const std::vector<double>& w) { return pearson(t, w); },
          py::arg("template"), py::arg("window"));
    m.def("average_magnitude",
          [](const std::vector<cplx>& values) { return average_magnitude(std::span<const cplx>(values)); });
    m.def("preset_names", [] {
        std::vector<std::string> names;
        for (const auto& p : scenario_presets()) names.push_back(p.name);
        return names;
    });

    // Configuration
    py::class_<ChannelConfig>(m, "ChannelConfig")
        .def(py::init<>())
        .def_readwrite("base_gain", &ChannelConfig::base_gain)
        .def_readwrite("modulation_depth", &ChannelConfig::modulation_depth)
        .def_readwrite("noise_sigma", &ChannelConfig::noise_sigma)
        .def_readwrite("spike_probability", &ChannelConfig::spike_probability)
        .def_readwrite("spike_gain", &ChannelConfig::spike_gain)
        .def_readwrite("drift_rate", &ChannelConfig::drift_rate)
        .def("validate", &ChannelConfig::validate);

    py::enum_<SdReplacement>(m, "SdReplacement")
        .value("window_mean", SdReplacement::window_mean)
        .value("previous_output", SdReplacement::previous_output);

    py::class_<FilterConfig>(m, "FilterConfig")
        .def(py::init<>())
        .def_readwrite("alpha", &FilterConfig::alpha)
        .def_readwrite("median_window", &FilterConfig::median_window)
        .def_readwrite("sd_window", &FilterConfig::sd_window)
        .def_readwrite("deviation_factor", &FilterConfig::deviation_factor)
        .def_readwrite("median_enabled", &FilterConfig::median_enabled)
        .def_readwrite("sd_enabled", &FilterConfig::sd_enabled)
        .def_readwrite("sd_replacement", &FilterConfig::sd_replacement);

    py::class_<DetectorConfig>(m, "DetectorConfig")
        .def(py::init<>())
        .def_readwrite("theta", &DetectorConfig::theta)
        .def_readwrite("repetitions", &DetectorConfig::repetitions)
        .def_readwrite("code_length", &DetectorConfig::code_length)
        .def_readwrite("polarity_agnostic", &DetectorConfig::polarity_agnostic)
        .def_readwrite("min_relative_spread", &DetectorConfig::min_relative_spread)
        .def("validate", &DetectorConfig::validate);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_static("from_preset", [](const std::string& name) { return ExperimentConfig::from_preset(name); })
        .def_static("from_json", [](const std::string& text) {
            try {
                return experiment_config_from_json(nlohmann::json::parse(text));
            } catch (const nlohmann::json::exception& e) {
                throw ConfigError(e.what());
            }
        })
        .def_static("load", &load_experiment_config)
        .def("to_json", [](const ExperimentConfig& c) { return to_json(c).dump(); })
        .def_readwrite("scenario", &ExperimentConfig::scenario)
        .def_readwrite("channel", &ExperimentConfig::channel)
        .def_readwrite("tag_code_id", &ExperimentConfig::tag_code_id)
        .def_readwrite("tag_enabled", &ExperimentConfig::tag_enabled)
        .def_readwrite("R", &ExperimentConfig::R)
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_readwrite("detector", &ExperimentConfig::detector)
        .def_readwrite("filter", &ExperimentConfig::filter)
        .def("set", [](ExperimentConfig& c, const std::string& name, double value) { set_parameter(c, name, value); })
        .def("validate", &ExperimentConfig::validate);

    // Detection
    py::class_<DetectionEvent>(m, "DetectionEvent")
        .def_readonly("period_index", &DetectionEvent::period_index)
        .def_readonly("code_id", &DetectionEvent::code_id)
        .def_readonly("correlation", &DetectionEvent::correlation)
        .def("__eq__", [](const DetectionEvent& a, const DetectionEvent& b) { return a == b; })
        .def("__repr__", [](const DetectionEvent& e) {
            return "DetectionEvent(period_index=" + std::to_string(e.period_index) +
                   ", code_id=" + std::to_string(e.code_id) + ", correlation=" + format_exact(e.correlation) + ")";
        });

    py::class_<Detector>(m, "Detector")
        .def(py::init([](const DetectorConfig& d, const FilterConfig& f) {
                 return Detector(GoldCodeSet::standard(), d, f);
             }),
             py::arg("detector") = DetectorConfig{}, py::arg("filter") = FilterConfig{})
        .def("process", &Detector::process, py::arg("a"))
        .def("process_validated", &Detector::process_validated, py::arg("a_valid"))
        .def_property_readonly("last_y", &Detector::last_y);

    m.def("detect_trace", [](const std::vector<double>& trace, const DetectorConfig& d, const FilterConfig& f,
                             bool raw) {
        auto events = detect_trace(trace, GoldCodeSet::standard(), d, f);
        return raw ? events : deduplicate(events, d.window_length());
    }, py::arg("trace"), py::arg("detector") = DetectorConfig{}, py::arg("filter") = FilterConfig{},
       py::arg("raw") = false);

    // Experiments
    py::class_<Metrics>(m, "Metrics")
        .def_readonly("detection_probability", &Metrics::detection_probability)
        .def_readonly("false_alarm_probability", &Metrics::false_alarm_probability)
        .def_readonly("cross_false_alarm_probability", &Metrics::cross_false_alarm_probability)
        .def_readonly("detections", &Metrics::detections)
        .def_readonly("false_alarms", &Metrics::false_alarms)
        .def_readonly("cross_false_alarms", &Metrics::cross_false_alarms)
        .def_readonly("messages", &Metrics::messages)
        .def_property_readonly("detection_ci", [](const Metrics& x) { return interval(x.detection_ci); })
        .def_property_readonly("false_alarm_ci", [](const Metrics& x) { return interval(x.false_alarm_ci); })
        .def_property_readonly("cross_false_alarm_ci",
                               [](const Metrics& x) { return interval(x.cross_false_alarm_ci); })
        .def_readonly("events", &Metrics::events)
        .def_readonly("raw_events", &Metrics::raw_events)
        .def_readonly("amplitudes", &Metrics::amplitudes)
        .def_readonly("n_srs", &Metrics::n_srs)
        .def_readonly("periods_simulated", &Metrics::periods_simulated)
        .def_readonly("seed", &Metrics::seed)
        .def_property_readonly("simulated_duration_ms",
                               [](const Metrics& x) { return x.simulated_duration.count(); })
        .def("to_json", [](const Metrics& x) { return to_json(x).dump(); });

    py::class_<PhaseResult>(m, "PhaseResult")
        .def_readonly("off", &PhaseResult::off)
        .def_readonly("on", &PhaseResult::on);

    m.def("run_experiment", &run_experiment, py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def("run_phases", &run_phases, py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def("sweep", [](const ExperimentConfig& base, const std::string& parameter, const std::vector<double>& values,
                      unsigned threads) {
        std::vector<SweepRow> rows;
        {
            py::gil_scoped_release release;
            rows = sweep(base, parameter, values, threads);
        }
        py::list out;
        for (auto& r : rows) out.append(py::make_tuple(r.value, std::move(r.metrics)));
        return out;
    }, py::arg("base"), py::arg("parameter"), py::arg("values"), py::arg("threads") = 0);
    m.def("sweep_parameters", &sweep_parameters);
    m.def("derive_seed", &derive_seed);
    m.def("clopper_pearson", [](std::size_t k, std::size_t n, double confidence) {
        return interval(clopper_pearson(k, n, confidence));
    }, py::arg("successes"), py::arg("trials"), py::arg("confidence") = 0.95);
}
