// srsbs: command-line front end for the SRS backscatter simulator/detector.
//
//   srsbs gen-codes
//   srsbs simulate  [--scenario NAME] [--code ID] [--R N] [--tag-off] [--export-trace PATH]
//   srsbs detect    --trace PATH [--raw]
//   srsbs baseline  [--scenario NAME] [--export-trace PREFIX]
//   srsbs sweep     --param NAME --values v1,v2,...
//
// Global: --config PATH, --seed N, --out PATH, --format csv|json, --manifest PATH.
// Seed precedence: --seed, then SRSBS_SEED, then the config file.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "srsbs/error.hpp"
#include "srsbs/harness.hpp"
#include "srsbs/io.hpp"

using namespace srsbs;
using nlohmann::json;

namespace {

struct GlobalOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    std::string format = "csv";
    std::string manifest_path;
};

struct RunOptions {
    std::string scenario;
    std::optional<std::size_t> code;
    std::optional<std::size_t> R;
    bool tag_off = false;
    std::string export_trace;
};

ExperimentConfig resolve_config(const GlobalOptions& g, const RunOptions& r) {
    ExperimentConfig c = g.config_path.empty() ? ExperimentConfig::from_preset("indoor_long")
                                               : load_experiment_config(g.config_path);
    if (!r.scenario.empty()) {
        c.scenario = r.scenario;
        c.channel = find_preset(r.scenario).config;
    }
    if (r.code) c.tag_code_id = *r.code;
    if (r.R) c.R = *r.R;
    if (r.tag_off) c.tag_enabled = false;
    if (const char* env = std::getenv("SRSBS_SEED"); env && *env) {
        try {
            std::size_t used = 0;
            c.seed = std::stoull(env, &used);
            if (env[used] != '\0') throw std::invalid_argument(env);
        } catch (const std::exception&) {
            throw ConfigError(std::string("SRSBS_SEED is not an unsigned integer: ") + env);
        }
    }
    if (g.seed) c.seed = *g.seed;
    c.channel.seed = c.seed;
    c.validate();
    return c;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write '" + path + "'");
    f << content;
    if (!f) throw IoError("write failed for '" + path + "'");
}

void emit(const GlobalOptions& g, const std::string& content) {
    if (g.out_path.empty())
        std::cout << content;
    else
        write_file(g.out_path, content);
}

void emit_manifest(const GlobalOptions& g, const json& manifest) {
    const std::string text = manifest.dump(2) + "\n";
    if (!g.manifest_path.empty())
        write_file(g.manifest_path, text);
    else if (!g.out_path.empty())
        write_file(g.out_path + ".manifest.json", text);
    else
        std::cerr << text;
}

void export_trace(const std::string& path, const std::vector<double>& trace) {
    std::ostringstream s;
    write_trace(s, trace);
    write_file(path, s.str());
}

std::string results(const GlobalOptions& g, std::span<const ResultRow> rows) {
    std::ostringstream s;
    if (g.format == "json")
        write_results_json(s, rows);
    else
        write_results_csv(s, rows);
    return s.str();
}

std::vector<double> parse_values(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos)
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("--values: '" + item + "' is not a number");
        }
    }
    return values;
}

void add_run_options(CLI::App* cmd, RunOptions& r, bool with_tag_off) {
    cmd->add_option("--scenario", r.scenario, "Channel preset")
        ->check(CLI::IsMember({"noiseless", "indoor_short", "indoor_long", "outdoor"}));
    cmd->add_option("--code", r.code, "TAG code id (0..32)");
    cmd->add_option("--R", r.R, "Message repetitions");
    if (with_tag_off) cmd->add_flag("--tag-off", r.tag_off, "Run with the TAG switched off");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SRS ambient backscatter simulator and detector"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--config", g.config_path, "Experiment config (JSON)");
    app.add_option("--seed", g.seed, "RNG seed (overrides SRSBS_SEED and the config)");
    app.add_option("--out", g.out_path, "Output file (default stdout)");
    app.add_option("--format", g.format, "Results format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--manifest", g.manifest_path,
                   "Manifest path (default <out>.manifest.json, or stderr)");

    auto* gen = app.add_subcommand("gen-codes", "Emit the 33 Gold codes as CSV");

    RunOptions sim_opts;
    auto* sim = app.add_subcommand("simulate", "Run one experiment");
    add_run_options(sim, sim_opts, true);
    sim->add_option("--export-trace", sim_opts.export_trace, "Write the a(k) trace here");

    std::string trace_path;
    bool raw_events = false;
    auto* det = app.add_subcommand("detect", "Run the detector over an amplitude trace");
    det->add_option("--trace", trace_path, "Trace file, one real per line")->required();
    det->add_flag("--raw", raw_events, "Emit every above-threshold period");

    RunOptions base_opts;
    auto* base = app.add_subcommand("baseline", "TAG OFF then TAG ON with shared settings");
    add_run_options(base, base_opts, false);
    base->add_option("--export-trace", base_opts.export_trace,
                     "Trace prefix; writes PREFIX.off.txt and PREFIX.on.txt");

    RunOptions sweep_opts;
    std::string param, values_text;
    unsigned threads = 0;
    auto* sw = app.add_subcommand("sweep", "Sweep one scalar parameter");
    add_run_options(sw, sweep_opts, true);
    sw->add_option("--param", param, "Parameter name")->required();
    sw->add_option("--values", values_text, "Comma-separated values")->required();
    sw->add_option("--threads", threads, "Worker threads (0 = all cores)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            std::ostringstream s;
            write_codes_csv(s, GoldCodeSet::standard());
            emit(g, s.str());
            emit_manifest(g, {{"tool", "srsbs"},
                              {"version", std::string(kToolVersion)},
                              {"command", "gen-codes"},
                              {"config",
                               {{"poly_a", {{"taps", preferred_poly_a().taps},
                                            {"seed", preferred_poly_a().seed}}},
                                {"poly_b", {{"taps", preferred_poly_b().taps},
                                            {"seed", preferred_poly_b().seed}}}}}});
        } else if (sim->parsed()) {
            const ExperimentConfig c = resolve_config(g, sim_opts);
            const Metrics m = run_experiment(c);
            const ResultRow row{c.scenario, &m};
            emit(g, results(g, std::span(&row, 1)));
            if (!sim_opts.export_trace.empty()) export_trace(sim_opts.export_trace, m.amplitudes);
            emit_manifest(g, make_manifest("simulate", c, {{"metrics", to_json(m)}}));
        } else if (det->parsed()) {
            const ExperimentConfig c = resolve_config(g, {});
            const std::vector<double> trace = read_trace_file(trace_path);
            const auto raw = detect_trace(trace, GoldCodeSet::standard(), c.detector, c.filter);
            const auto events = raw_events ? raw : deduplicate(raw, c.detector.window_length());
            std::ostringstream s;
            write_events_csv(s, events);
            emit(g, s.str());
            emit_manifest(g, make_manifest("detect", c,
                                           {{"trace", trace_path},
                                            {"periods", trace.size()},
                                            {"raw", raw_events},
                                            {"events", events.size()}}));
        } else if (base->parsed()) {
            const ExperimentConfig c = resolve_config(g, base_opts);
            const PhaseResult r = run_phases(c);
            const ResultRow rows[] = {{"off", &r.off}, {"on", &r.on}};
            emit(g, results(g, rows));
            if (!base_opts.export_trace.empty()) {
                export_trace(base_opts.export_trace + ".off.txt", r.off.amplitudes);
                export_trace(base_opts.export_trace + ".on.txt", r.on.amplitudes);
            }
            emit_manifest(g, make_manifest("baseline", c,
                                           {{"off", to_json(r.off)}, {"on", to_json(r.on)}}));
        } else if (sw->parsed()) {
            const ExperimentConfig c = resolve_config(g, sweep_opts);
            const std::vector<double> values = parse_values(values_text);
            const auto table = sweep(c, param, values, threads);
            std::vector<ResultRow> rows;
            for (const auto& t : table) {
                char label[32];
                std::snprintf(label, sizeof label, "%.10g", t.value);
                rows.push_back({label, &t.metrics});
            }
            emit(g, results(g, rows));
            emit_manifest(g, make_manifest("sweep", c, {{"parameter", param}, {"values", values}}));
        }
    } catch (const ConfigError& e) {
        std::cerr << "srsbs: configuration error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        std::cerr << "srsbs: I/O error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "srsbs: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
