#include "rl1lae/results.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "rl1lae/config.hpp"
#include "rl1lae/format.hpp"

namespace rl1lae {

namespace fs = std::filesystem;

namespace {

std::vector<std::size_t> label_order(std::span<const MseTrajectory> trajectories) {
    std::vector<std::size_t> idx(trajectories.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return to_string(trajectories[a].algorithm) < to_string(trajectories[b].algorithm);
    });
    return idx;
}

}  // namespace

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string results_csv(std::span<const MseTrajectory> trajectories) {
    std::string out = "iteration,algorithm,mse_linear,mse_db\n";
    for (std::size_t a : label_order(trajectories)) {
        const MseTrajectory& t = trajectories[a];
        const std::string label(to_string(t.algorithm));
        for (std::size_t n = 0; n < t.mse_per_iteration.size(); ++n) {
            const double v = t.mse_per_iteration[n];
            out += std::to_string(n);
            out += ',';
            out += label;
            out += ',';
            out += format_double(v);
            out += ',';
            out += format_double(to_db(v));
            out += '\n';
        }
    }
    return out;
}

std::string plot_data(std::span<const MseTrajectory> trajectories) {
    std::string out;
    bool first = true;
    for (std::size_t a : label_order(trajectories)) {
        const MseTrajectory& t = trajectories[a];
        if (!first) out += "\n\n";
        first = false;
        out += "# " + std::string(to_string(t.algorithm)) + "\n";
        for (std::size_t n = 0; n < t.mse_per_iteration.size(); ++n) {
            out += std::to_string(n) + " " + format_double(to_db(t.mse_per_iteration[n])) + "\n";
        }
    }
    return out;
}

std::string manifest_json(const RunManifest& m) {
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    for (const auto& [k, v] : config_entries(m.config)) config[k] = v;
    nlohmann::ordered_json j;
    j["tool"] = "rl1lae";
    j["tool_version"] = m.tool_version;
    j["timestamp"] = m.timestamp;
    j["master_seed"] = m.config.master_seed;
    j["sigma1_sq"] = m.config.noise.sigma1_sq;
    j["config"] = config;
    j["outputs"] = m.outputs;
    return j.dump(2) + "\n";
}

ScenarioConfig config_from_manifest(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("", std::string("manifest is not valid JSON: ") + e.what());
    }
    if (!j.contains("config") || !j["config"].is_object()) {
        throw ConfigError("config", "manifest has no config object");
    }
    std::string text;
    for (const auto& [k, v] : j["config"].items()) {
        text += k + " = " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    }
    return parse_config(text);
}

void write_file_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open " + tmp.string() + " for writing");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        f.flush();
        if (!f) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw IoError("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot rename " + tmp.string() + " to " + path.string());
    }
}

std::vector<fs::path> emit_results(std::span<const MseTrajectory> trajectories, RunManifest manifest,
                                   const fs::path& directory, const EmitOptions& options) {
    std::error_code ec;
    fs::create_directories(directory, ec);
    if (ec || !fs::is_directory(directory)) {
        throw IoError("cannot create output directory " + directory.string());
    }

    const fs::path csv = directory / (options.stem + ".csv");
    const fs::path man = directory / (options.stem + ".manifest.json");
    const fs::path plot = directory / (options.stem + ".plot.dat");

    std::vector<fs::path> written{csv, man};
    if (options.plot_data) written.push_back(plot);
    for (const auto& p : written) manifest.outputs.push_back(p.string());
    if (manifest.timestamp.empty()) manifest.timestamp = utc_timestamp();

    const std::string csv_text = results_csv(trajectories);
    write_file_atomic(csv, csv_text);
    write_file_atomic(man, manifest_json(manifest));
    if (options.plot_data) write_file_atomic(plot, plot_data(trajectories));
    return written;
}

std::string sweep_summary_csv(const std::string& param, std::span<const SweepPoint> points,
                              double tail_fraction) {
    std::string out = param + ",algorithm,steady_state_mse_db\n";
    for (const SweepPoint& p : points) {
        for (const MseTrajectory& t : p.trajectories) {
            out += p.value + "," + std::string(to_string(t.algorithm)) + ",";
            out += t.mse_per_iteration.empty() ? "nan" : format_double(steady_state_mse(t, tail_fraction));
            out += '\n';
        }
    }
    return out;
}

}  // namespace rl1lae
