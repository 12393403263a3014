#include "srsbs/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include <boost/math/special_functions/beta.hpp>

#include "srsbs/error.hpp"

namespace srsbs {

ExperimentConfig ExperimentConfig::from_preset(std::string_view preset) {
    ExperimentConfig c;
    c.scenario = std::string(preset);
    c.channel = find_preset(preset).config;
    return c;
}

void ExperimentConfig::validate() const {
    if (scenario != "custom") find_preset(scenario);
    channel.validate();
    zc.validate();
    detector.validate();
    filter.validate(detector.repetitions);
    if (R < 1) throw ConfigError("experiment: R must be >= 1");
    if (detector.code_length != kCodeLength)
        throw ConfigError("experiment: N must be 31 for the degree-5 Gold family");
    if (tag_code_id >= kGoldSetSize)
        throw ConfigError("experiment: tag_code_id " + std::to_string(tag_code_id) +
                          " outside 0.." + std::to_string(kGoldSetSize - 1));
    if (flush_periods(*this) >= detector.window_length())
        throw ConfigError("experiment: filter windows too long for the message length");
}

Interval clopper_pearson(std::size_t successes, std::size_t trials, double confidence) {
    if (trials == 0) return {};
    const double tail = 0.5 * (1.0 - confidence);
    const double k = static_cast<double>(successes);
    const double n = static_cast<double>(trials);
    Interval ci;
    ci.lower = successes == 0 ? 0.0 : boost::math::ibeta_inv(k, n - k + 1.0, tail);
    ci.upper = successes == trials ? 1.0 : boost::math::ibeta_inv(k + 1.0, n - k, 1.0 - tail);
    return ci;
}

std::size_t flush_periods(const ExperimentConfig& config) {
    return config.filter.median_window + config.filter.sd_window;
}

std::uint64_t attributed_message(std::uint64_t period, std::size_t message_length) {
    if (period + 1 < message_length) return 0;
    return (period + 1 - message_length) / message_length;
}

void count_outcomes(Metrics& m, const ExperimentConfig& config) {
    const std::size_t len = config.detector.window_length();
    std::vector<bool> hit(config.R, false), wrong(config.R, false), any(config.R, false);
    for (const auto& ev : m.events) {
        const auto msg = attributed_message(ev.period_index, len);
        if (msg >= config.R) continue;
        any[msg] = true;
        (ev.code_id == config.tag_code_id ? hit : wrong)[msg] = true;
    }
    m.messages = config.R;
    m.detections = m.false_alarms = m.cross_false_alarms = 0;
    if (config.tag_enabled) {
        m.detections = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), true));
        m.cross_false_alarms = static_cast<std::size_t>(std::count(wrong.begin(), wrong.end(), true));
    } else {
        m.false_alarms = static_cast<std::size_t>(std::count(any.begin(), any.end(), true));
    }
    const double r = static_cast<double>(config.R);
    m.detection_probability = static_cast<double>(m.detections) / r;
    m.false_alarm_probability = static_cast<double>(m.false_alarms) / r;
    m.cross_false_alarm_probability = static_cast<double>(m.cross_false_alarms) / r;
    m.detection_ci = clopper_pearson(m.detections, config.R);
    m.false_alarm_ci = clopper_pearson(m.false_alarms, config.R);
    m.cross_false_alarm_ci = clopper_pearson(m.cross_false_alarms, config.R);
}

Metrics run_experiment(const ExperimentConfig& config) {
    config.validate();
    const GoldCodeSet& codes = GoldCodeSet::standard();
    const TagMessage message =
        encode_repetition(codes.code(config.tag_code_id), config.detector.repetitions,
                          config.tag_code_id);
    const SrsSymbol srs = make_srs_symbol(config.zc);
    Detector detector(codes, config.detector, config.filter);

    Rng rng(config.seed);
    ChannelState channel = initial_state(config.channel);

    Metrics m;
    m.seed = config.seed;
    m.n_srs = static_cast<std::uint64_t>(config.R) * config.detector.window_length();
    m.periods_simulated = m.n_srs + flush_periods(config);
    m.simulated_duration = kSrsPeriod * static_cast<std::int64_t>(m.n_srs);
    m.amplitudes.reserve(m.periods_simulated);

    for (std::uint64_t k = 0; k < m.periods_simulated; ++k) {
        const OokState state =
            config.tag_enabled ? ook_state(message, k) : OokState::transparent;
        const SrsSymbol rx = propagate(srs, state, config.channel, channel, rng);
        const double a = average_magnitude(rx);
        m.amplitudes.push_back(a);
        if (auto ev = detector.process(a)) m.raw_events.push_back(*ev);
        channel = step(channel, config.channel, rng);
    }
    m.events = deduplicate(m.raw_events, config.detector.window_length());
    count_outcomes(m, config);
    return m;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

PhaseResult run_phases(const ExperimentConfig& config) {
    config.validate();
    ExperimentConfig off = config;
    off.tag_enabled = false;
    off.seed = derive_seed(config.seed, 0);
    ExperimentConfig on = config;
    on.tag_enabled = true;
    on.seed = derive_seed(config.seed, 1);
    return {run_experiment(off), run_experiment(on)};
}

const std::vector<std::string>& sweep_parameters() {
    static const std::vector<std::string> names = {
        "modulation_depth", "noise_sigma", "base_gain", "spike_probability",
        "spike_gain",       "drift_rate",  "theta",     "alpha",
        "u",                "P",           "Q",
        "min_relative_spread"};
    return names;
}

void set_parameter(ExperimentConfig& c, std::string_view name, double value) {
    auto as_count = [&](std::size_t& field) {
        if (value < 0 || value != std::floor(value))
            throw ConfigError("sweep: " + std::string(name) + " needs a non-negative integer");
        field = static_cast<std::size_t>(value);
    };
    bool channel_knob = true;
    if (name == "modulation_depth") c.channel.modulation_depth = value;
    else if (name == "noise_sigma") c.channel.noise_sigma = value;
    else if (name == "base_gain") c.channel.base_gain = value;
    else if (name == "spike_probability") c.channel.spike_probability = value;
    else if (name == "spike_gain") c.channel.spike_gain = value;
    else if (name == "drift_rate") c.channel.drift_rate = value;
    else {
        channel_knob = false;
        if (name == "theta") c.detector.theta = value;
        else if (name == "alpha") c.filter.alpha = value;
        else if (name == "u") c.filter.deviation_factor = value;
        else if (name == "P") as_count(c.filter.median_window);
        else if (name == "Q") as_count(c.filter.sd_window);
        else if (name == "min_relative_spread") c.detector.min_relative_spread = value;
        else throw ConfigError("sweep: unknown parameter '" + std::string(name) + "'");
    }
    // Preset values no longer describe the channel once a knob moves.
    if (channel_knob) c.scenario = "custom";
}

std::vector<SweepRow> sweep(const ExperimentConfig& base, std::string_view parameter,
                            const std::vector<double>& values, unsigned threads) {
    if (std::find(sweep_parameters().begin(), sweep_parameters().end(), parameter) ==
        sweep_parameters().end())
        throw ConfigError("sweep: unknown parameter '" + std::string(parameter) + "'");
    // Resolve every config up front so errors surface before any simulation.
    std::vector<ExperimentConfig> configs;
    configs.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        ExperimentConfig c = base;
        set_parameter(c, parameter, values[i]);
        c.seed = derive_seed(base.seed, i);
        c.validate();
        configs.push_back(std::move(c));
    }
    if (configs.empty()) return {};

    std::vector<SweepRow> rows(configs.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(configs.size()));
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    auto worker = [&](unsigned w) {
        try {
            for (std::size_t i; (i = next.fetch_add(1)) < configs.size();)
                rows[i] = SweepRow{values[i], run_experiment(configs[i])};
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    pool.clear();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rows;
}

}  // namespace srsbs
