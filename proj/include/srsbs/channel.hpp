#pragma once

// Synthetic uplink channel between the UE, the TAG and the base station.
// The TAG's effect is a real multiplicative change of the whole SRS symbol.

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "srsbs/srs.hpp"
#include "srsbs/tag.hpp"

namespace srsbs {

using Rng = std::mt19937_64;

struct ChannelConfig {
    double base_gain = 0.3;          // A, direct-path amplitude
    double modulation_depth = 0.05;  // delta
    double noise_sigma = 0.0;        // std of the complex AWGN per subcarrier
    double spike_probability = 0.0;
    double spike_gain = 3.0;
    double drift_rate = 0.0;         // std of the log-gain random walk per period
    std::uint64_t seed = 1;

    void validate() const;
};

struct ScenarioPreset {
    std::string name;
    ChannelConfig config;
};

/// noiseless, indoor_short, indoor_long, outdoor; in decreasing
/// modulation-to-noise order.
const std::vector<ScenarioPreset>& scenario_presets();

/// Throws ConfigError for an unknown name.
const ScenarioPreset& find_preset(std::string_view name);

struct ChannelState {
    double gain = 1.0;  // g_k
};

inline ChannelState initial_state(const ChannelConfig& config) { return {config.base_gain}; }

/// rx_n = g_k (1 + delta b) srs_n + noise_n, then the whole symbol is scaled
/// by spike_gain with probability spike_probability. Draw order per call:
/// one uniform for the spike, then (re, im) normals for each subcarrier.
SrsSymbol propagate(const SrsSymbol& srs, OokState state, const ChannelConfig& config,
                    const ChannelState& channel, Rng& rng);

/// g_{k+1} = g_k exp(drift_rate w), w ~ N(0, 1). Always draws one normal.
ChannelState step(const ChannelState& channel, const ChannelConfig& config, Rng& rng);

}  // namespace srsbs
