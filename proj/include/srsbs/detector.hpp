#pragma once

// Base-station TAG detector. Per SRS period:
//   average magnitude -> hard threshold -> median filter -> SD filter
//   -> sliding Pearson correlation against every candidate code
//   -> thresholded argmax.

#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "srsbs/srs.hpp"
#include "srsbs/tag.hpp"

namespace srsbs {

/// What the SD filter substitutes for an outlier.
enum class SdReplacement {
    window_mean,    // epsilon of the current window
    previous_output // last emitted y
};

struct FilterConfig {
    double alpha = 0.55;                // hard validity threshold
    std::size_t median_window = 5;      // P
    std::size_t sd_window = 5;          // Q
    double deviation_factor = 0.20;     // u; infinity disables the SD filter
    bool median_enabled = true;
    bool sd_enabled = true;
    SdReplacement sd_replacement = SdReplacement::window_mean;

    /// Throws ConfigError unless 1 <= P, Q < repetitions and alpha, u > 0.
    void validate(std::size_t repetitions) const;
};

struct DetectorConfig {
    double theta = 0.4;
    std::size_t repetitions = kDefaultRepetitions;  // v
    std::size_t code_length = kCodeLength;          // N
    /// Threshold |r| instead of r. Off by default.
    bool polarity_agnostic = false;
    /// A correlation window whose standard deviation is at most this fraction
    /// of its mean is flat: no decision is made. 0 disables the floor.
    double min_relative_spread = 0.003;

    void validate() const;
    std::size_t window_length() const { return repetitions * code_length; }
};

struct DetectionEvent {
    std::uint64_t period_index = 0;
    std::size_t code_id = 0;
    double correlation = 0.0;

    friend bool operator==(const DetectionEvent&, const DetectionEvent&) = default;
};

struct DetectorState {
    bool primed = false;  // first sample seen
    double last_valid = 0.0;
    std::deque<double> median_buffer;
    std::deque<double> sd_buffer;
    std::optional<double> last_output;
    std::deque<double> correlation_window;
    std::uint64_t period_counter = 0;
};

/// (1/N) sum |s_n|
double average_magnitude(const SrsSymbol& srs);
double average_magnitude(std::span<const cplx> values);

/// Replaces a > alpha with the last accepted sample. The first sample passes
/// unconditionally and primes last_valid.
double hard_threshold(double a, DetectorState& state, const FilterConfig& config);

/// Median of the last min(P, seen) inputs; even counts average the two
/// central order statistics.
double median_filter(double a_valid, DetectorState& state, const FilterConfig& config);

/// Replaces d when |d - mean| > u * stddev over the last Q medians
/// (population standard deviation).
double sd_filter(double d, DetectorState& state, const FilterConfig& config);

/// Population standard deviation over the mean magnitude of a window.
double relative_spread(std::span<const double> window);

/// Pearson correlation; 0 when either side has zero variance.
double pearson(std::span<const double> tmpl, std::span<const double> window);
double pearson(std::span<const int> tmpl, std::span<const double> window);

/// Correlation bank over the repetition-encoded templates of a code set.
class CorrelatorBank {
public:
    CorrelatorBank(const GoldCodeSet& codes, std::size_t repetitions);

    std::size_t size() const { return centered_.size(); }
    std::size_t window_length() const { return window_length_; }

    /// r for every code, in code_id order.
    std::vector<double> correlate(std::span<const double> window) const;

private:
    std::size_t window_length_;
    std::vector<std::vector<double>> centered_;  // x' - mu
    std::vector<double> norms_;                  // sqrt(sum (x' - mu)^2)
};

/// Slides the correlation window by y; once full and not flat, emits the
/// best-matching code when its correlation exceeds theta. Ties go to the
/// lowest code_id.
std::optional<DetectionEvent> detect_step(double y, DetectorState& state,
                                          const DetectorConfig& config,
                                          const CorrelatorBank& bank);

/// Stateful pipeline owning one stream.
class Detector {
public:
    Detector(const GoldCodeSet& codes, DetectorConfig detector, FilterConfig filter);

    /// Full chain starting from the per-period average magnitude.
    std::optional<DetectionEvent> process(double a);
    /// Chain starting after the hard threshold (a' already validated).
    std::optional<DetectionEvent> process_validated(double a_valid);

    const DetectorState& state() const { return state_; }
    const DetectorConfig& detector_config() const { return detector_; }
    const FilterConfig& filter_config() const { return filter_; }
    /// Output of the SD stage for the most recent period.
    double last_y() const { return last_y_; }

private:
    DetectorConfig detector_;
    FilterConfig filter_;
    CorrelatorBank bank_;
    DetectorState state_;
    double last_y_ = 0.0;
};

/// Runs a fresh detector over a whole amplitude trace and returns raw events.
std::vector<DetectionEvent> detect_trace(std::span<const double> amplitudes,
                                         const GoldCodeSet& codes,
                                         const DetectorConfig& detector,
                                         const FilterConfig& filter);

/// Drops an event when the same code already produced a kept event fewer
/// than `span` periods earlier.
std::vector<DetectionEvent> deduplicate(std::span<const DetectionEvent> raw, std::size_t span);

inline constexpr double kFilterDisabled = std::numeric_limits<double>::infinity();

}  // namespace srsbs
