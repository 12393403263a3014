#include "srsbs/channel.hpp"

#include <cmath>
#include <string>

#include "srsbs/error.hpp"

namespace srsbs {

void ChannelConfig::validate() const {
    if (!(base_gain > 0.0)) throw ConfigError("channel: base_gain must be positive");
    if (!(modulation_depth >= 0.0)) throw ConfigError("channel: modulation_depth must be >= 0");
    if (!(noise_sigma >= 0.0)) throw ConfigError("channel: noise_sigma must be >= 0");
    if (!(spike_probability >= 0.0 && spike_probability <= 1.0))
        throw ConfigError("channel: spike_probability must lie in [0, 1]");
    if (!(spike_gain > 1.0)) throw ConfigError("channel: spike_gain must be > 1");
    if (!(drift_rate >= 0.0)) throw ConfigError("channel: drift_rate must be >= 0");
}

const std::vector<ScenarioPreset>& scenario_presets() {
    // Simulator calibration values. base_gain keeps the mean magnitude below
    // the default hard threshold (0.55) while a x3 spike exceeds it.
    static const std::vector<ScenarioPreset> presets = [] {
        std::vector<ScenarioPreset> p;
        p.push_back({"noiseless", {0.3, 0.05, 0.0, 0.0, 3.0, 0.0, 1}});
        p.push_back({"indoor_short", {0.3, 0.05, 0.01, 0.005, 3.0, 0.0, 1}});
        p.push_back({"indoor_long", {0.3, 0.02, 0.02, 0.01, 3.0, 5e-5, 1}});
        p.push_back({"outdoor", {0.3, 0.005, 0.025, 0.02, 3.0, 1e-4, 1}});
        return p;
    }();
    return presets;
}

const ScenarioPreset& find_preset(std::string_view name) {
    for (const auto& p : scenario_presets())
        if (p.name == name) return p;
    throw ConfigError("unknown scenario preset '" + std::string(name) + "'");
}

SrsSymbol propagate(const SrsSymbol& srs, OokState state, const ChannelConfig& config,
                    const ChannelState& channel, Rng& rng) {
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);

    const bool spike = uniform(rng) < config.spike_probability;
    const double b = state == OokState::backscatter ? 1.0 : 0.0;
    const double amplitude = channel.gain * (1.0 + config.modulation_depth * b);
    const double per_axis = config.noise_sigma / std::sqrt(2.0);
    const double scale = spike ? config.spike_gain : 1.0;

    SrsSymbol rx{std::vector<cplx>(srs.values.size()), srs.period_index};
    for (std::size_t n = 0; n < srs.values.size(); ++n) {
        const double re = normal(rng);
        const double im = normal(rng);
        cplx v = amplitude * srs.values[n];
        if (per_axis > 0.0) v += cplx(per_axis * re, per_axis * im);
        rx.values[n] = scale * v;
    }
    return rx;
}

ChannelState step(const ChannelState& channel, const ChannelConfig& config, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double w = normal(rng);
    if (config.drift_rate == 0.0) return channel;
    return {channel.gain * std::exp(config.drift_rate * w)};
}

}  // namespace srsbs
