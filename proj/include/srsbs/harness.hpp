#pragma once

// End-to-end experiments: TAG-OFF baseline, TAG-ON runs over R message
// repetitions, and per-message detection / false alarm / cross false alarm
// statistics.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "srsbs/channel.hpp"
#include "srsbs/detector.hpp"
#include "srsbs/srs.hpp"
#include "srsbs/tag.hpp"

namespace srsbs {

inline constexpr std::size_t kDefaultMessageRepetitions = 300;  // R
inline constexpr std::chrono::milliseconds kSrsPeriod{10};      // T_s

struct ExperimentConfig {
    std::string scenario = "indoor_long";  // preset name, or "custom"
    ChannelConfig channel = {};            // resolved channel parameters
    ZcConfig zc = {};
    std::size_t tag_code_id = 7;
    bool tag_enabled = true;
    std::size_t R = kDefaultMessageRepetitions;
    std::uint64_t seed = 1;
    DetectorConfig detector = {};
    FilterConfig filter = {};

    /// Config using a named preset's channel parameters.
    static ExperimentConfig from_preset(std::string_view preset);

    void validate() const;
};

/// Exact (Clopper-Pearson) two-sided interval.
struct Interval {
    double lower = 0.0;
    double upper = 1.0;
};

Interval clopper_pearson(std::size_t successes, std::size_t trials, double confidence = 0.95);

struct Metrics {
    double detection_probability = 0.0;
    double false_alarm_probability = 0.0;
    double cross_false_alarm_probability = 0.0;
    std::size_t detections = 0;
    std::size_t false_alarms = 0;
    std::size_t cross_false_alarms = 0;
    std::size_t messages = 0;  // R
    Interval detection_ci, false_alarm_ci, cross_false_alarm_ci;

    std::vector<DetectionEvent> events;      // de-duplicated
    std::vector<DetectionEvent> raw_events;  // every period above threshold
    std::vector<double> amplitudes;          // a^(k) for every simulated period

    std::uint64_t n_srs = 0;              // R * v * N
    std::uint64_t periods_simulated = 0;  // n_srs plus the detector flush
    std::uint64_t seed = 0;
    std::chrono::milliseconds simulated_duration{0};  // R * T_m
};

/// Extra periods simulated after the last message so the filter delay does not
/// push its correlation peak out of the run: P + Q.
std::size_t flush_periods(const ExperimentConfig& config);

/// Message index an event at `period` is attributed to: the message in which
/// its correlation window starts.
std::uint64_t attributed_message(std::uint64_t period, std::size_t message_length);

/// Tallies per-message outcomes from de-duplicated events.
void count_outcomes(Metrics& metrics, const ExperimentConfig& config);

Metrics run_experiment(const ExperimentConfig& config);

struct PhaseResult {
    Metrics off;
    Metrics on;
};

/// TAG OFF then TAG ON with seeds derive_seed(seed, 0) and derive_seed(seed, 1).
PhaseResult run_phases(const ExperimentConfig& config);

/// splitmix64 of (base, index); decorrelated child seeds.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Scalar knobs accepted by sweep(): modulation_depth, noise_sigma,
/// base_gain, spike_probability, spike_gain, drift_rate, theta, alpha, u,
/// P, Q, min_relative_spread.
const std::vector<std::string>& sweep_parameters();

/// Throws ConfigError for an unknown parameter name.
void set_parameter(ExperimentConfig& config, std::string_view name, double value);

struct SweepRow {
    double value = 0.0;
    Metrics metrics;
};

/// One run per value with seed derive_seed(base.seed, index); trials run on
/// `threads` workers (0 = hardware concurrency) and come back in input order.
std::vector<SweepRow> sweep(const ExperimentConfig& base, std::string_view parameter,
                            const std::vector<double>& values, unsigned threads = 0);

}  // namespace srsbs
