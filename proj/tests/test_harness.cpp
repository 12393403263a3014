#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "srsbs/error.hpp"
#include "srsbs/harness.hpp"

using namespace srsbs;

namespace {

double stddev(const std::vector<double>& x) {
    const double m = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return std::sqrt(ss / (x.size() - 1));
}

}  // namespace

TEST_CASE("noiseless end to end") {
    auto cfg = ExperimentConfig::from_preset("noiseless");
    cfg.R = 50;
    cfg.tag_code_id = 7;
    const Metrics on = run_experiment(cfg);
    CHECK(on.detection_probability == 1.0);
    CHECK(on.cross_false_alarm_probability == 0.0);
    CHECK(on.detections + (on.messages - on.detections) == 50);
    CHECK(on.events.size() == 50);
    for (const auto& ev : on.events) CHECK(ev.code_id == 7);
    CHECK(on.n_srs == 50 * 217);

    cfg.tag_enabled = false;
    const Metrics off = run_experiment(cfg);
    CHECK(off.false_alarm_probability == 0.0);
    CHECK(off.raw_events.empty());
}

TEST_CASE("timing bookkeeping") {
    auto cfg = ExperimentConfig::from_preset("noiseless");
    cfg.R = 300;
    const Metrics m = run_experiment(cfg);
    CHECK(m.n_srs == 65100);
    CHECK(m.simulated_duration == std::chrono::milliseconds(651000));
    CHECK(m.amplitudes.size() == m.periods_simulated);
    CHECK(m.periods_simulated == m.n_srs + flush_periods(cfg));
}

TEST_CASE("message attribution uses the start of the correlation window") {
    CHECK(attributed_message(216, 217) == 0);
    CHECK(attributed_message(226, 217) == 0);
    CHECK(attributed_message(432, 217) == 0);
    CHECK(attributed_message(433, 217) == 1);
    CHECK(attributed_message(5, 217) == 0);
}

TEST_CASE("run_phases: noiseless traces") {
    auto cfg = ExperimentConfig::from_preset("noiseless");
    cfg.R = 5;
    const PhaseResult r = run_phases(cfg);
    const auto& off = r.off.amplitudes;
    CHECK(std::all_of(off.begin(), off.end(), [&](double a) { return a == off.front(); }));
    std::set<double> levels(r.on.amplitudes.begin(), r.on.amplitudes.end());
    REQUIRE(levels.size() == 2);
    CHECK(*levels.begin() == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(*levels.rbegin() == doctest::Approx(0.3 * 1.05).epsilon(1e-12));
    CHECK(r.off.seed == derive_seed(cfg.seed, 0));
    CHECK(r.on.seed == derive_seed(cfg.seed, 1));
}

TEST_CASE("run_phases: OFF spread below ON spread, no OFF events") {
    for (const char* preset : {"noiseless", "indoor_short"}) {
        auto cfg = ExperimentConfig::from_preset(preset);
        cfg.R = 300;
        const PhaseResult r = run_phases(cfg);
        CHECK(r.off.events.empty());
        CHECK(r.off.false_alarm_probability == 0.0);
    }
}

TEST_CASE("run_phases: OFF spread below ON spread with small noise") {
    auto cfg = ExperimentConfig::from_preset("indoor_short");
    cfg.channel.spike_probability = 0.0;
    cfg.scenario = "custom";
    cfg.R = 20;
    for (double depth : {0.005, 0.02, 0.05}) {
        cfg.channel.modulation_depth = depth;
        const PhaseResult r = run_phases(cfg);
        CHECK(stddev(r.off.amplitudes) < stddev(r.on.amplitudes));
    }
}

TEST_CASE("reproducibility and seed sensitivity") {
    auto cfg = ExperimentConfig::from_preset("outdoor");
    cfg.R = 20;
    const Metrics a = run_experiment(cfg);
    const Metrics b = run_experiment(cfg);
    CHECK(a.amplitudes == b.amplitudes);
    CHECK(a.raw_events == b.raw_events);
    CHECK(a.detection_probability == b.detection_probability);
    cfg.seed = 2;
    CHECK(run_experiment(cfg).amplitudes != a.amplitudes);
}

TEST_CASE("null channel: detection matches the TAG-OFF false alarm rate") {
    auto cfg = ExperimentConfig::from_preset("indoor_long");
    cfg.channel.modulation_depth = 0.0;
    cfg.scenario = "custom";
    cfg.R = 300;
    const PhaseResult r = run_phases(cfg);
    const double p1 = r.on.detection_probability;
    const double p0 = r.off.false_alarm_probability;
    const double pooled = (p1 + p0) / 2.0;
    if (pooled > 0.0) {
        const double z = (p1 - p0) / std::sqrt(pooled * (1 - pooled) * (2.0 / 300));
        CHECK(std::abs(z) < 1.96);
    } else {
        CHECK(p1 == p0);
    }
}

TEST_CASE("sweep basics") {
    auto cfg = ExperimentConfig::from_preset("noiseless");
    cfg.R = 5;
    CHECK(sweep(cfg, "modulation_depth", {}).empty());
    CHECK_THROWS_AS(sweep(cfg, "warp_factor", {1.0}), ConfigError);
    CHECK_THROWS_AS(sweep(cfg, "P", {7.0}), ConfigError);

    const auto rows = sweep(cfg, "theta", {0.2, 0.4, 0.6}, 2);
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].value == std::vector<double>{0.2, 0.4, 0.6}[i]);
        CHECK(rows[i].metrics.seed == derive_seed(cfg.seed, i));
    }
}

TEST_CASE("sweep theta on TAG-OFF noise: false alarms non-increasing") {
    auto cfg = ExperimentConfig::from_preset("outdoor");
    cfg.tag_enabled = false;
    cfg.R = 100;
    const auto rows = sweep(cfg, "theta", {0.2, 0.4, 0.6});
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i].metrics.false_alarm_probability <= rows[i - 1].metrics.false_alarm_probability);
}

TEST_CASE("experiment config validation") {
    auto cfg = ExperimentConfig::from_preset("noiseless");
    cfg.tag_code_id = 33;
    CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
    cfg = ExperimentConfig::from_preset("noiseless");
    cfg.R = 0;
    CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
    cfg = ExperimentConfig::from_preset("noiseless");
    cfg.scenario = "lunar";
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("clopper-pearson edge cases match the closed form") {
    const auto zero = clopper_pearson(0, 300);
    CHECK(zero.lower == 0.0);
    CHECK(zero.upper == doctest::Approx(1.0 - std::pow(0.025, 1.0 / 300)).epsilon(1e-10));
    const auto all = clopper_pearson(300, 300);
    CHECK(all.upper == 1.0);
    CHECK(all.lower == doctest::Approx(std::pow(0.025, 1.0 / 300)).epsilon(1e-10));
    const auto mid = clopper_pearson(150, 300);
    CHECK(mid.lower < 0.5);
    CHECK(mid.upper > 0.5);
    CHECK(mid.lower + mid.upper == doctest::Approx(1.0).epsilon(1e-10));
}
