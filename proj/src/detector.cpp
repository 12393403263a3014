#include "srsbs/detector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "srsbs/error.hpp"

namespace srsbs {
namespace {

// Windows whose spread is below this fraction of their magnitude are flat.
constexpr double kFlatRelTol = 1e-12;

void push_bounded(std::deque<double>& buf, double v, std::size_t cap) {
    buf.push_back(v);
    while (buf.size() > cap) buf.pop_front();
}

}  // namespace

void FilterConfig::validate(std::size_t repetitions) const {
    if (!(alpha > 0.0)) throw ConfigError("filter: alpha must be positive");
    if (median_window < 1 || sd_window < 1) throw ConfigError("filter: P and Q must be >= 1");
    if (median_window >= repetitions || sd_window >= repetitions)
        throw ConfigError("filter: P and Q must be shorter than the repetition run v=" +
                          std::to_string(repetitions));
    if (!(deviation_factor > 0.0)) throw ConfigError("filter: deviation factor u must be positive");
}

void DetectorConfig::validate() const {
    if (!(theta > 0.0 && theta < 1.0)) throw ConfigError("detector: theta must lie in (0, 1)");
    if (repetitions < 1) throw ConfigError("detector: v must be >= 1");
    if (code_length < 2) throw ConfigError("detector: N must be >= 2");
    if (!(min_relative_spread >= 0.0))
        throw ConfigError("detector: min_relative_spread must be >= 0");
}

double average_magnitude(std::span<const cplx> values) {
    if (values.empty()) return 0.0;
    double acc = 0.0;
    for (const auto& s : values) acc += std::abs(s);
    return acc / static_cast<double>(values.size());
}

double average_magnitude(const SrsSymbol& srs) { return average_magnitude(srs.values); }

double hard_threshold(double a, DetectorState& state, const FilterConfig& config) {
    if (!state.primed) {
        state.primed = true;
        state.last_valid = a;
        return a;
    }
    if (a > config.alpha) return state.last_valid;
    state.last_valid = a;
    return a;
}

double median_filter(double a_valid, DetectorState& state, const FilterConfig& config) {
    if (!config.median_enabled) return a_valid;
    push_bounded(state.median_buffer, a_valid, config.median_window);
    std::vector<double> sorted(state.median_buffer.begin(), state.median_buffer.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    if (n % 2 == 1) return sorted[n / 2];
    return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

double sd_filter(double d, DetectorState& state, const FilterConfig& config) {
    if (!config.sd_enabled || std::isinf(config.deviation_factor)) {
        state.last_output = d;
        return d;
    }
    push_bounded(state.sd_buffer, d, config.sd_window);
    const auto& e = state.sd_buffer;
    const double n = static_cast<double>(e.size());
    const double mean = std::accumulate(e.begin(), e.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : e) ss += (x - mean) * (x - mean);
    const double sigma = std::sqrt(ss / n);

    double y = d;
    if (std::abs(d - mean) > config.deviation_factor * sigma) {
        if (config.sd_replacement == SdReplacement::previous_output && state.last_output)
            y = *state.last_output;
        else
            y = mean;
    }
    state.last_output = y;
    return y;
}

double relative_spread(std::span<const double> window) {
    if (window.empty()) return 0.0;
    const double n = static_cast<double>(window.size());
    const double mean = std::accumulate(window.begin(), window.end(), 0.0) / n;
    double ss = 0.0;
    for (double y : window) ss += (y - mean) * (y - mean);
    const double sd = std::sqrt(ss / n);
    if (mean == 0.0) return sd == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return sd / std::abs(mean);
}

namespace {

template <typename T>
double pearson_impl(std::span<const T> tmpl, std::span<const double> window) {
    if (tmpl.size() != window.size() || tmpl.empty())
        throw std::invalid_argument("pearson: template and window lengths differ");
    const double n = static_cast<double>(window.size());
    double mu = 0.0, rho = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < window.size(); ++i) {
        mu += static_cast<double>(tmpl[i]);
        rho += window[i];
        scale = std::max(scale, std::abs(window[i]));
    }
    mu /= n;
    rho /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < window.size(); ++i) {
        const double dx = static_cast<double>(tmpl[i]) - mu;
        const double dy = window[i] - rho;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    const double flat = n * (kFlatRelTol * scale) * (kFlatRelTol * scale);
    if (sxx == 0.0 || syy <= flat) return 0.0;
    return std::clamp(sxy / (std::sqrt(sxx) * std::sqrt(syy)), -1.0, 1.0);
}

}  // namespace

double pearson(std::span<const double> tmpl, std::span<const double> window) {
    return pearson_impl(tmpl, window);
}

double pearson(std::span<const int> tmpl, std::span<const double> window) {
    return pearson_impl(tmpl, window);
}

CorrelatorBank::CorrelatorBank(const GoldCodeSet& codes, std::size_t repetitions)
    : window_length_(repetitions * codes.code_length()) {
    centered_.reserve(codes.size());
    norms_.reserve(codes.size());
    for (std::size_t id = 0; id < codes.size(); ++id) {
        const TagMessage msg = encode_repetition(codes.code(id), repetitions, id);
        const double mu = std::accumulate(msg.samples.begin(), msg.samples.end(), 0.0) /
                          static_cast<double>(msg.samples.size());
        std::vector<double> c(msg.samples.size());
        double ss = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            c[i] = msg.samples[i] - mu;
            ss += c[i] * c[i];
        }
        centered_.push_back(std::move(c));
        norms_.push_back(std::sqrt(ss));
    }
}

std::vector<double> CorrelatorBank::correlate(std::span<const double> window) const {
    if (window.size() != window_length_)
        throw std::invalid_argument("correlate: window length mismatch");
    const double n = static_cast<double>(window.size());
    double rho = 0.0, scale = 0.0;
    for (double y : window) {
        rho += y;
        scale = std::max(scale, std::abs(y));
    }
    rho /= n;
    std::vector<double> dy(window.size());
    double syy = 0.0;
    for (std::size_t i = 0; i < dy.size(); ++i) {
        dy[i] = window[i] - rho;
        syy += dy[i] * dy[i];
    }
    std::vector<double> r(centered_.size(), 0.0);
    const double flat = n * (kFlatRelTol * scale) * (kFlatRelTol * scale);
    if (syy <= flat) return r;
    const double ny = std::sqrt(syy);
    for (std::size_t k = 0; k < centered_.size(); ++k) {
        if (norms_[k] == 0.0) continue;
        const double sxy = std::inner_product(centered_[k].begin(), centered_[k].end(),
                                              dy.begin(), 0.0);
        r[k] = std::clamp(sxy / (norms_[k] * ny), -1.0, 1.0);
    }
    return r;
}

std::optional<DetectionEvent> detect_step(double y, DetectorState& state,
                                          const DetectorConfig& config,
                                          const CorrelatorBank& bank) {
    const std::uint64_t k = state.period_counter++;
    push_bounded(state.correlation_window, y, config.window_length());
    if (state.correlation_window.size() < config.window_length()) return std::nullopt;

    const std::vector<double> window(state.correlation_window.begin(),
                                     state.correlation_window.end());
    if (config.min_relative_spread > 0.0 &&
        relative_spread(window) <= config.min_relative_spread)
        return std::nullopt;
    const std::vector<double> r = bank.correlate(window);

    std::size_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t id = 0; id < r.size(); ++id) {
        const double score = config.polarity_agnostic ? std::abs(r[id]) : r[id];
        if (score > best_score) {
            best_score = score;
            best = id;
        }
    }
    if (best_score > config.theta) return DetectionEvent{k, best, r[best]};
    return std::nullopt;
}

Detector::Detector(const GoldCodeSet& codes, DetectorConfig detector, FilterConfig filter)
    : detector_(detector), filter_(filter), bank_(codes, detector.repetitions) {
    detector_.validate();
    filter_.validate(detector_.repetitions);
    if (codes.code_length() != detector_.code_length)
        throw ConfigError("detector: N does not match the code set");
}

std::optional<DetectionEvent> Detector::process(double a) {
    return process_validated(hard_threshold(a, state_, filter_));
}

std::optional<DetectionEvent> Detector::process_validated(double a_valid) {
    const double d = median_filter(a_valid, state_, filter_);
    last_y_ = sd_filter(d, state_, filter_);
    return detect_step(last_y_, state_, detector_, bank_);
}

std::vector<DetectionEvent> detect_trace(std::span<const double> amplitudes,
                                         const GoldCodeSet& codes,
                                         const DetectorConfig& detector,
                                         const FilterConfig& filter) {
    Detector det(codes, detector, filter);
    std::vector<DetectionEvent> events;
    for (double a : amplitudes)
        if (auto ev = det.process(a)) events.push_back(*ev);
    return events;
}

std::vector<DetectionEvent> deduplicate(std::span<const DetectionEvent> raw, std::size_t span) {
    std::vector<DetectionEvent> kept;
    std::vector<std::pair<std::size_t, std::uint64_t>> last_kept;  // (code_id, period)
    for (const auto& ev : raw) {
        auto it = std::find_if(last_kept.begin(), last_kept.end(),
                               [&](const auto& p) { return p.first == ev.code_id; });
        if (it != last_kept.end() && ev.period_index - it->second < span) continue;
        kept.push_back(ev);
        if (it != last_kept.end())
            it->second = ev.period_index;
        else
            last_kept.emplace_back(ev.code_id, ev.period_index);
    }
    return kept;
}

}  // namespace srsbs
