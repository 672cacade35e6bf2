#ifndef RL1LAE_RESULTS_HPP
#define RL1LAE_RESULTS_HPP

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rl1lae/experiment.hpp"

namespace rl1lae {

inline constexpr const char* kToolVersion = "0.1.0";

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunManifest {
    ScenarioConfig config;  // resolved
    std::string tool_version = kToolVersion;
    std::string timestamp;  // ISO-8601 UTC
    std::vector<std::string> outputs;
};

std::string utc_timestamp();

/// `iteration,algorithm,mse_linear,mse_db` rows sorted by (algorithm, iteration).
std::string results_csv(std::span<const MseTrajectory> trajectories);

/// One whitespace-separated block per algorithm ("# <label>" then `iteration mse_db`
/// lines), blocks separated by two blank lines (gnuplot `index` layout).
std::string plot_data(std::span<const MseTrajectory> trajectories);

std::string manifest_json(const RunManifest& manifest);
/// Reads back the config stored in a manifest document (resolved).
ScenarioConfig config_from_manifest(const std::string& json_text);

struct EmitOptions {
    std::string stem = "results";
    bool plot_data = false;
};

/// Writes <stem>.csv, <stem>.manifest.json and optionally <stem>.plot.dat into
/// `directory` (created if missing). Each file goes through a temporary and a
/// rename, so an unwritable destination fails with IoError before any CSV
/// content lands. Returns the written paths, also recorded in the manifest.
std::vector<std::filesystem::path> emit_results(std::span<const MseTrajectory> trajectories,
                                                RunManifest manifest,
                                                const std::filesystem::path& directory,
                                                const EmitOptions& options = {});

/// Writes `content` to `path` atomically (temporary + rename).
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

struct SweepPoint {
    std::string value;
    std::vector<MseTrajectory> trajectories;
};

/// `<param>,algorithm,steady_state_mse_db`, one row per (value, algorithm),
/// in sweep order then algorithm order.
std::string sweep_summary_csv(const std::string& param, std::span<const SweepPoint> points,
                              double tail_fraction = 0.1);

}  // namespace rl1lae

#endif  // RL1LAE_RESULTS_HPP
