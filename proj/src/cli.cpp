#include "rl1lae/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "rl1lae/config.hpp"
#include "rl1lae/experiment.hpp"
#include "rl1lae/results.hpp"

namespace rl1lae {

namespace fs = std::filesystem;

namespace {

struct CommonFlags {
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> runs;
    std::optional<std::uint64_t> iterations;
    std::string out_dir;
    int threads = 0;
    std::vector<std::string> overrides;
    bool plot = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--seed", f.seed, "Master RNG seed");
    cmd->add_option("--runs", f.runs, "Monte-Carlo runs M");
    cmd->add_option("--iterations", f.iterations, "Iterations per run");
    cmd->add_option("--out", f.out_dir, std::string("Output directory (default $") + kOutDirEnv + " or ./results)");
    cmd->add_option("--threads", f.threads, "Worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
    cmd->add_option("--set", f.overrides, "Override a config key, key=value (repeatable)");
    cmd->add_flag("--plot-data", f.plot, "Also write <stem>.plot.dat");
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ScenarioConfig load_config_file(const fs::path& path) {
    const std::string text = read_text(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (path.extension() == ".json" || (first != std::string::npos && text[first] == '{')) {
        return config_from_manifest(text);
    }
    return parse_config(text);
}

// "runs/scen.manifest.json" -> "scen", "scen.cfg" -> "scen"
std::string stem_of(const fs::path& path) {
    std::string stem = path.stem().string();
    constexpr std::string_view suffix = ".manifest";
    if (stem.size() > suffix.size() && stem.ends_with(suffix)) stem.resize(stem.size() - suffix.size());
    return stem;
}

void apply_overrides(ScenarioConfig& c, const CommonFlags& f) {
    for (const auto& kv : f.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError(kv, "--set expects key=value");
        set_config_key(c, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (f.seed) c.master_seed = *f.seed;
    if (f.runs) set_config_key(c, "runs", std::to_string(*f.runs));
    if (f.iterations) set_config_key(c, "iterations", std::to_string(*f.iterations));
    if (c.channel.sparsity_k > c.channel.length_n) {
        throw ConfigError("sparsity", "must not exceed channel_length");
    }
    try {
        c.resolve();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("", e.what());
    }
}

fs::path output_dir(const CommonFlags& f) {
    if (!f.out_dir.empty()) return f.out_dir;
    if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
    return "results";
}

bool all_diverged(const std::vector<MseTrajectory>& ts) {
    for (const auto& t : ts) {
        if (!t.mse_per_iteration.empty()) return false;
    }
    return true;
}

void print_summary(std::ostream& out, const std::string& title, const MonteCarloResult& r) {
    out << title << "\n";
    for (const auto& t : r.trajectories) {
        out << "  " << std::left << std::setw(8) << to_string(t.algorithm) << " ";
        if (t.mse_per_iteration.empty()) {
            out << "all runs diverged";
        } else {
            out << "steady-state " << std::fixed << std::setprecision(2) << steady_state_mse(t) << " dB";
            out.unsetf(std::ios::floatfield);
        }
        out << "  (runs " << t.num_runs << ", diverged " << t.diverged_runs << ")\n";
    }
}

// Runs one scenario and writes its files; returns true if every algorithm diverged.
bool run_and_emit(const ScenarioConfig& config, const CommonFlags& f, const std::string& stem,
                  std::ostream& out, std::vector<MseTrajectory>* keep = nullptr) {
    ExecutionOptions exec;
    exec.threads = f.threads;
    const MonteCarloResult r = run_monte_carlo(config, exec);
    RunManifest manifest{config, kToolVersion, utc_timestamp(), {}};
    const auto paths = emit_results(r.trajectories, manifest, output_dir(f), EmitOptions{stem, f.plot});
    print_summary(out, stem, r);
    for (const auto& p : paths) out << "  wrote " << p.string() << "\n";
    if (keep) *keep = r.trajectories;
    return all_diverged(r.trajectories);
}

bool run_sweep(const ScenarioConfig& base, const SweepSpec& sweep, const CommonFlags& f,
               const std::string& base_stem, std::ostream& out) {
    if (sweep.values.empty()) throw ConfigError("values", "sweep needs at least one value");
    std::vector<SweepPoint> points;
    bool diverged = false;
    for (const auto& v : sweep.values) {
        ScenarioConfig c = base;
        set_config_key(c, sweep.param, v);
        try {
            c.resolve();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(sweep.param, e.what());
        }
        SweepPoint p{v, {}};
        diverged |= run_and_emit(c, f, base_stem + "_" + sweep.param + "_" + v, out, &p.trajectories);
        points.push_back(std::move(p));
    }
    const fs::path summary = output_dir(f) / (base_stem + "_" + sweep.param + "_summary.csv");
    write_file_atomic(summary, sweep_summary_csv(sweep.param, points));
    out << "wrote " << summary.string() << "\n";
    return diverged;
}

std::vector<std::string> split_values(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto a = item.find_first_not_of(' ');
        const auto b = item.find_last_not_of(' ');
        if (a != std::string::npos) out.push_back(item.substr(a, b - a + 1));
    }
    return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Monte-Carlo learning curves for sign and reweighted-l1 adaptive channel estimators",
                 "rl1lae"};
    app.require_subcommand(1);

    CommonFlags run_flags, preset_flags, sweep_flags;
    std::string config_path, preset_name, sweep_param, sweep_values, sweep_config, sweep_preset;

    auto* run_cmd = app.add_subcommand("run", "Run a scenario from a key=value config or a manifest");
    run_cmd->add_option("config", config_path, "Config file or <stem>.manifest.json")->required();
    add_common(run_cmd, run_flags);

    auto* preset_cmd = app.add_subcommand("preset", "Run a named figure scenario");
    preset_cmd->add_option("name", preset_name, "Preset name (see list-presets)")->required();
    add_common(preset_cmd, preset_flags);

    auto* list_cmd = app.add_subcommand("list-presets", "List figure presets");

    auto* sweep_cmd = app.add_subcommand("sweep", "Run one scenario per value of a config key");
    sweep_cmd->add_option("--param", sweep_param, "Config key to sweep")->required();
    sweep_cmd->add_option("--values", sweep_values, "Comma-separated values")->required();
    auto* cfg_opt = sweep_cmd->add_option("--config", sweep_config, "Base config file");
    sweep_cmd->add_option("--preset", sweep_preset, "Base preset")->excludes(cfg_opt);
    add_common(sweep_cmd, sweep_flags);

    std::vector<const char*> argv{"rl1lae"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        bool diverged = false;
        if (*list_cmd) {
            for (const auto& p : list_presets()) {
                out << std::left << std::setw(6) << p.name << "  " << p.description << "\n";
            }
        } else if (*run_cmd) {
            ScenarioConfig c = load_config_file(config_path);
            apply_overrides(c, run_flags);
            diverged = run_and_emit(c, run_flags, stem_of(config_path), out);
        } else if (*preset_cmd) {
            const Preset& p = find_preset(preset_name);
            ScenarioConfig c = p.config;
            apply_overrides(c, preset_flags);
            diverged = p.sweep ? run_sweep(c, *p.sweep, preset_flags, p.name, out)
                               : run_and_emit(c, preset_flags, p.name, out);
        } else if (*sweep_cmd) {
            ScenarioConfig c;
            std::string stem = "sweep";
            if (!sweep_config.empty()) {
                c = load_config_file(sweep_config);
                stem = stem_of(sweep_config);
            } else if (!sweep_preset.empty()) {
                c = find_preset(sweep_preset).config;
                stem = sweep_preset;
            }
            apply_overrides(c, sweep_flags);
            diverged = run_sweep(c, SweepSpec{sweep_param, split_values(sweep_values)}, sweep_flags, stem, out);
        }
        if (diverged) {
            err << "error: every algorithm diverged in every run\n";
            return kExitDiverged;
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
}

}  // namespace rl1lae
