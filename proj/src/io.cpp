#include "srsbs/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "srsbs/error.hpp"

namespace srsbs {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, std::string_view where, const std::set<std::string>& known) {
    if (!obj.is_object()) throw ConfigError(std::string(where) + ": expected a JSON object");
    for (const auto& [key, _] : obj.items())
        if (!known.contains(key))
            throw ConfigError(std::string(where) + ": unknown field '" + key + "'");
}

template <typename T>
void read_field(const json& obj, const char* key, T& out) {
    if (auto it = obj.find(key); it != obj.end()) out = it->template get<T>();
}

void apply_channel(const json& obj, ChannelConfig& c) {
    reject_unknown(obj, "channel", {"base_gain", "modulation_depth", "noise_sigma",
                                    "spike_probability", "spike_gain", "drift_rate", "seed",
                                    "preset"});
    read_field(obj, "base_gain", c.base_gain);
    read_field(obj, "modulation_depth", c.modulation_depth);
    read_field(obj, "noise_sigma", c.noise_sigma);
    read_field(obj, "spike_probability", c.spike_probability);
    read_field(obj, "spike_gain", c.spike_gain);
    read_field(obj, "drift_rate", c.drift_rate);
    read_field(obj, "seed", c.seed);
}

bool same_channel(const ChannelConfig& a, const ChannelConfig& b) {
    return a.base_gain == b.base_gain && a.modulation_depth == b.modulation_depth &&
           a.noise_sigma == b.noise_sigma && a.spike_probability == b.spike_probability &&
           a.spike_gain == b.spike_gain && a.drift_rate == b.drift_rate;
}

json channel_json(const ChannelConfig& c) {
    return {{"base_gain", c.base_gain},
            {"modulation_depth", c.modulation_depth},
            {"noise_sigma", c.noise_sigma},
            {"spike_probability", c.spike_probability},
            {"spike_gain", c.spike_gain},
            {"drift_rate", c.drift_rate},
            {"seed", c.seed}};
}

json interval_json(const Interval& ci) { return json::array({ci.lower, ci.upper}); }

json event_json(const DetectionEvent& ev) {
    return {{"period_index", ev.period_index},
            {"code_id", ev.code_id},
            {"correlation", ev.correlation}};
}

std::string format_prob(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", p);
    return buf;
}

}  // namespace

ExperimentConfig experiment_config_from_json(const json& doc) {
    try {
        reject_unknown(doc, "config", {"scenario", "channel", "zc", "tag_code_id", "tag_enabled",
                                       "R", "seed", "detector", "filter"});
        ExperimentConfig c;
        if (auto it = doc.find("scenario"); it != doc.end()) {
            if (it->is_string()) {
                c = ExperimentConfig::from_preset(it->get<std::string>());
            } else {
                const std::string base = it->value("preset", std::string("noiseless"));
                c.channel = find_preset(base).config;
                apply_channel(*it, c.channel);
                c.scenario = "custom";
            }
        } else {
            c = ExperimentConfig::from_preset(c.scenario);
        }
        if (auto it = doc.find("channel"); it != doc.end()) {
            apply_channel(*it, c.channel);
            if (c.scenario != "custom" && !same_channel(c.channel, find_preset(c.scenario).config))
                c.scenario = "custom";
        }
        if (auto it = doc.find("zc"); it != doc.end()) {
            reject_unknown(*it, "zc", {"root", "base_length", "target_length"});
            read_field(*it, "root", c.zc.root);
            read_field(*it, "base_length", c.zc.base_length);
            read_field(*it, "target_length", c.zc.target_length);
        }
        read_field(doc, "tag_code_id", c.tag_code_id);
        read_field(doc, "tag_enabled", c.tag_enabled);
        read_field(doc, "R", c.R);
        read_field(doc, "seed", c.seed);
        if (auto it = doc.find("detector"); it != doc.end()) {
            reject_unknown(*it, "detector",
                           {"theta", "v", "N", "polarity_agnostic", "min_relative_spread"});
            read_field(*it, "theta", c.detector.theta);
            read_field(*it, "v", c.detector.repetitions);
            read_field(*it, "N", c.detector.code_length);
            read_field(*it, "polarity_agnostic", c.detector.polarity_agnostic);
            read_field(*it, "min_relative_spread", c.detector.min_relative_spread);
        }
        if (auto it = doc.find("filter"); it != doc.end()) {
            const json& f = *it;
            reject_unknown(f, "filter", {"alpha", "P", "Q", "u", "median_enabled", "sd_enabled",
                                         "sd_replacement"});
            read_field(f, "alpha", c.filter.alpha);
            read_field(f, "P", c.filter.median_window);
            read_field(f, "Q", c.filter.sd_window);
            if (auto u = f.find("u"); u != f.end()) {
                if (u->is_null() || (u->is_string() && u->get<std::string>() == "inf"))
                    c.filter.deviation_factor = kFilterDisabled;
                else
                    c.filter.deviation_factor = u->get<double>();
            }
            read_field(f, "median_enabled", c.filter.median_enabled);
            read_field(f, "sd_enabled", c.filter.sd_enabled);
            if (auto r = f.find("sd_replacement"); r != f.end()) {
                const auto mode = r->get<std::string>();
                if (mode == "window_mean") c.filter.sd_replacement = SdReplacement::window_mean;
                else if (mode == "previous_output")
                    c.filter.sd_replacement = SdReplacement::previous_output;
                else throw ConfigError("filter: sd_replacement must be window_mean or previous_output");
            }
        }
        c.channel.seed = c.seed;
        c.validate();
        return c;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

json to_json(const ExperimentConfig& c) {
    json u = std::isinf(c.filter.deviation_factor) ? json("inf") : json(c.filter.deviation_factor);
    return {
        {"scenario", c.scenario},
        {"channel", channel_json(c.channel)},
        {"zc", {{"root", c.zc.root}, {"base_length", c.zc.base_length},
                {"target_length", c.zc.target_length}}},
        {"tag_code_id", c.tag_code_id},
        {"tag_enabled", c.tag_enabled},
        {"R", c.R},
        {"seed", c.seed},
        {"detector", {{"theta", c.detector.theta}, {"v", c.detector.repetitions},
                      {"N", c.detector.code_length},
                      {"polarity_agnostic", c.detector.polarity_agnostic},
                      {"min_relative_spread", c.detector.min_relative_spread}}},
        {"filter", {{"alpha", c.filter.alpha}, {"P", c.filter.median_window},
                    {"Q", c.filter.sd_window}, {"u", u},
                    {"median_enabled", c.filter.median_enabled},
                    {"sd_enabled", c.filter.sd_enabled},
                    {"sd_replacement", c.filter.sd_replacement == SdReplacement::window_mean
                                           ? "window_mean"
                                           : "previous_output"}}},
    };
}

json to_json(const Metrics& m) {
    json events = json::array();
    for (const auto& ev : m.events) events.push_back(event_json(ev));
    return {{"detection_probability", m.detection_probability},
            {"false_alarm_probability", m.false_alarm_probability},
            {"cross_false_alarm_probability", m.cross_false_alarm_probability},
            {"detection_ci95", interval_json(m.detection_ci)},
            {"false_alarm_ci95", interval_json(m.false_alarm_ci)},
            {"cross_false_alarm_ci95", interval_json(m.cross_false_alarm_ci)},
            {"detections", m.detections},
            {"false_alarms", m.false_alarms},
            {"cross_false_alarms", m.cross_false_alarms},
            {"messages", m.messages},
            {"n_srs", m.n_srs},
            {"periods_simulated", m.periods_simulated},
            {"simulated_duration_ms", m.simulated_duration.count()},
            {"seed", m.seed},
            {"events", events}};
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw IoError("config file '" + path.string() + "' is not valid JSON: " + e.what());
    }
    try {
        return experiment_config_from_json(doc);
    } catch (const ConfigError& e) {
        throw ConfigError("config file '" + path.string() + "': " + e.what());
    }
}

void write_results_csv(std::ostream& out, std::span<const ResultRow> rows) {
    out << "parameter_value,detection_probability,false_alarm_probability,"
           "cross_false_alarm_probability,n_srs,seed\n";
    for (const auto& row : rows) {
        const Metrics& m = *row.metrics;
        out << row.parameter_value << ',' << format_prob(m.detection_probability) << ','
            << format_prob(m.false_alarm_probability) << ','
            << format_prob(m.cross_false_alarm_probability) << ',' << m.n_srs << ',' << m.seed
            << '\n';
    }
}

void write_results_json(std::ostream& out, std::span<const ResultRow> rows) {
    json arr = json::array();
    for (const auto& row : rows) {
        json r = to_json(*row.metrics);
        r["parameter_value"] = row.parameter_value;
        arr.push_back(std::move(r));
    }
    out << arr.dump(2) << '\n';
}

json make_manifest(std::string_view command, const ExperimentConfig& config, const json& extra) {
    json m = {{"tool", "srsbs"},
              {"version", std::string(kToolVersion)},
              {"command", std::string(command)},
              {"config", to_json(config)}};
    for (const auto& [k, v] : extra.items()) m[k] = v;
    return m;
}

void write_events_csv(std::ostream& out, std::span<const DetectionEvent> events) {
    out << "period_index,code_id,correlation\n";
    for (const auto& ev : events)
        out << ev.period_index << ',' << ev.code_id << ',' << format_exact(ev.correlation) << '\n';
}

std::string format_exact(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_trace(std::ostream& out, std::span<const double> trace) {
    for (double a : trace) out << format_exact(a) << '\n';
}

std::vector<double> read_trace(std::istream& in, const std::string& source_name) {
    std::vector<double> trace;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        const char* begin = line.data() + first;
        const char* end = line.data() + last + 1;
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc() || ptr != end || !std::isfinite(v))
            throw IoError("trace '" + source_name + "' line " + std::to_string(line_no) +
                          ": not a real number");
        trace.push_back(v);
    }
    return trace;
}

std::vector<double> read_trace_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read trace file '" + path.string() + "'");
    return read_trace(in, path.string());
}

void write_codes_csv(std::ostream& out, const GoldCodeSet& codes) {
    for (std::size_t id = 0; id < codes.size(); ++id) {
        out << id;
        for (int chip : codes.code(id)) out << ',' << chip;
        out << '\n';
    }
}

}  // namespace srsbs
