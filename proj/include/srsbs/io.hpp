#pragma once

// File formats: experiment config (JSON), results table (CSV), run manifest
// (JSON), amplitude traces (one real per line), detection events (CSV) and
// the Gold code table (CSV).

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "srsbs/harness.hpp"

namespace srsbs {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Field names mirror ExperimentConfig. "scenario" is a preset name or an
/// object of channel fields; a "channel" object overrides preset fields.
/// Missing fields keep their defaults. Throws ConfigError on bad values.
ExperimentConfig experiment_config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ExperimentConfig& config);
nlohmann::json to_json(const Metrics& metrics);

/// Throws IoError (with the path) when unreadable or not JSON.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct ResultRow {
    std::string parameter_value;
    const Metrics* metrics = nullptr;
};

/// Header: parameter_value,detection_probability,false_alarm_probability,
/// cross_false_alarm_probability,n_srs,seed
void write_results_csv(std::ostream& out, std::span<const ResultRow> rows);
void write_results_json(std::ostream& out, std::span<const ResultRow> rows);

nlohmann::json make_manifest(std::string_view command, const ExperimentConfig& config,
                             const nlohmann::json& extra = nlohmann::json::object());

/// Header: period_index,code_id,correlation
void write_events_csv(std::ostream& out, std::span<const DetectionEvent> events);

/// Values are written with 17 significant digits so a read-back is exact.
void write_trace(std::ostream& out, std::span<const double> trace);
std::vector<double> read_trace(std::istream& in, const std::string& source_name);
std::vector<double> read_trace_file(const std::filesystem::path& path);

/// One row per code: code_id followed by 31 comma-separated ±1 entries.
void write_codes_csv(std::ostream& out, const GoldCodeSet& codes);

/// Formats a double with 17 significant digits (round-trippable).
std::string format_exact(double v);

}  // namespace srsbs
