#ifndef RL1LAE_CONFIG_HPP
#define RL1LAE_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rl1lae/experiment.hpp"

namespace rl1lae {

/// Malformed or out-of-range configuration. what() names the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Parses a flat `key = value` document ('#' starts a comment). Missing keys
/// keep their defaults: N=80, K=8, SNR 10 dB, mu=0.01, lambda_r=1e-4,
/// delta_r=0.01, alpha1=alpha2=0, phi=0.2, sigma2_sq=40, 3000 iterations,
/// 1000 runs, seed 1. The result is resolved (sigma1_sq derived from snr_db).
///
/// Keys: channel_length sparsity snr_db phi alpha1 alpha2 sigma2_sq
///       mu lambda_r delta_r algorithms iterations runs seed
///       <alg>.mu <alg>.lambda_r <alg>.delta_r   (alg = lms, lae, rl1_lms, rl1_lae)
/// Global filter keys apply to every algorithm; the per-algorithm forms
/// override them regardless of line order.
ScenarioConfig parse_config(std::string_view text);

/// Applies one key to `config` (no resolve). Used for flag overrides and sweeps.
void set_config_key(ScenarioConfig& config, std::string_view key, std::string_view value);

/// Every key with its value, in canonical order, values formatted to round-trip exactly.
std::vector<std::pair<std::string, std::string>> config_entries(const ScenarioConfig& config);

/// Inverse of parse_config: parse_config(serialize_config(c)) == c for resolved c.
std::string serialize_config(const ScenarioConfig& config);

struct SweepSpec {
    std::string param;
    std::vector<std::string> values;
};

struct Preset {
    std::string name;
    std::string description;
    ScenarioConfig config;           // resolved
    std::optional<SweepSpec> sweep;  // set for multi-curve figures
};

/// Figure scenarios fig1..fig6 at SNR 10 dB, K=8 unless stated.
const std::vector<Preset>& list_presets();
/// Throws ConfigError for an unknown name.
const Preset& find_preset(std::string_view name);

}  // namespace rl1lae

#endif  // RL1LAE_CONFIG_HPP
