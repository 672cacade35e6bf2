#include "rl1lae/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "rl1lae/format.hpp"

namespace rl1lae {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

double parse_real(std::string_view key, std::string_view text) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end || !std::isfinite(v)) {
        throw ConfigError(std::string(key), "expected a finite number, got '" + std::string(text) + "'");
    }
    return v;
}

std::uint64_t parse_count(std::string_view key, std::string_view text) {
    std::uint64_t v = 0;
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw ConfigError(std::string(key), "expected a non-negative integer, got '" + std::string(text) + "'");
    }
    return v;
}

void require(bool ok, std::string_view key, const std::string& message) {
    if (!ok) throw ConfigError(std::string(key), message);
}

std::string algorithm_key(Algorithm alg) {
    std::string k = lower(to_string(alg));
    std::replace(k.begin(), k.end(), '-', '_');
    return k;
}

// "rl1_lae.mu" -> (RL1_LAE, "mu")
std::optional<std::pair<Algorithm, std::string>> split_algorithm_key(std::string_view key) {
    const auto dot_pos = key.find('.');
    if (dot_pos == std::string_view::npos) return std::nullopt;
    const std::string prefix(key.substr(0, dot_pos));
    for (Algorithm alg : kAllAlgorithms) {
        if (prefix == algorithm_key(alg)) return std::make_pair(alg, std::string(key.substr(dot_pos + 1)));
    }
    return std::nullopt;
}

void set_filter_field(FilterParams& p, std::string_view field, std::string_view key, std::string_view value) {
    const double v = parse_real(key, value);
    if (field == "mu") {
        require(v > 0.0, key, "step size must be positive");
        p.mu = v;
    } else if (field == "lambda_r") {
        require(v >= 0.0, key, "penalty weight must be non-negative");
        p.lambda_r = v;
    } else if (field == "delta_r") {
        require(v > 0.0, key, "reweight threshold must be positive");
        p.delta_r = v;
    } else {
        throw ConfigError(std::string(key), "unknown key");
    }
}

bool is_filter_field(std::string_view key) {
    return key == "mu" || key == "lambda_r" || key == "delta_r";
}

}  // namespace

void set_config_key(ScenarioConfig& c, std::string_view key_in, std::string_view value_in) {
    const std::string key = lower(trim(key_in));
    const std::string_view value = trim(value_in);
    require(!value.empty(), key, "missing value");

    if (key == "channel_length") {
        const auto v = parse_count(key, value);
        require(v >= 1, key, "channel length must be at least 1");
        c.channel.length_n = v;
    } else if (key == "sparsity") {
        const auto v = parse_count(key, value);
        require(v >= 1, key, "sparsity must be at least 1");
        c.channel.sparsity_k = v;
    } else if (key == "snr_db") {
        c.snr_db = parse_real(key, value);
    } else if (key == "phi") {
        const double v = parse_real(key, value);
        require(v >= 0.0 && v <= 1.0, key, "mixture probability must lie in [0, 1], got " + std::string(value));
        c.noise.phi = v;
    } else if (key == "alpha1") {
        c.noise.alpha1 = parse_real(key, value);
    } else if (key == "alpha2") {
        c.noise.alpha2 = parse_real(key, value);
    } else if (key == "sigma2_sq") {
        const double v = parse_real(key, value);
        require(v >= 0.0, key, "variance must be non-negative");
        c.noise.sigma2_sq = v;
    } else if (is_filter_field(key)) {
        for (auto& p : c.filter_params) set_filter_field(p, key, key, value);
    } else if (auto split = split_algorithm_key(key)) {
        set_filter_field(c.params_for(split->first), split->second, key, value);
    } else if (key == "algorithms") {
        std::vector<Algorithm> algs;
        std::string_view rest = value;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const auto item = trim(rest.substr(0, comma));
            try {
                algs.push_back(parse_algorithm(item));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(key, e.what());
            }
            require(std::count(algs.begin(), algs.end(), algs.back()) == 1, key,
                    "algorithm listed twice: " + std::string(item));
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        }
        require(!algs.empty(), key, "at least one algorithm is required");
        c.algorithms = std::move(algs);
    } else if (key == "iterations") {
        const auto v = parse_count(key, value);
        require(v >= 1, key, "iterations must be at least 1");
        c.iterations = v;
    } else if (key == "runs") {
        const auto v = parse_count(key, value);
        require(v >= 1, key, "runs must be at least 1");
        c.num_runs = v;
    } else if (key == "seed") {
        c.master_seed = parse_count(key, value);
    } else {
        throw ConfigError(key, "unknown key");
    }
}

ScenarioConfig parse_config(std::string_view text) {
    // Collected first so global filter keys can be applied before per-algorithm ones.
    std::vector<std::pair<std::string, std::string>> entries;
    std::map<std::string, int> seen;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view l = line;
        if (const auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
        l = trim(l);
        if (l.empty()) continue;
        const auto eq = l.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = lower(trim(l.substr(0, eq)));
        require(!key.empty(), key, "line " + std::to_string(line_no) + ": empty key");
        if (auto [it, inserted] = seen.emplace(key, line_no); !inserted) {
            throw ConfigError(key, "duplicate key (first set on line " + std::to_string(it->second) + ")");
        }
        entries.emplace_back(key, std::string(trim(l.substr(eq + 1))));
    }
    std::stable_partition(entries.begin(), entries.end(),
                          [](const auto& kv) { return !split_algorithm_key(kv.first).has_value(); });

    ScenarioConfig c;
    for (const auto& [k, v] : entries) set_config_key(c, k, v);
    require(c.channel.sparsity_k <= c.channel.length_n, "sparsity",
            "must not exceed channel_length (" + std::to_string(c.channel.length_n) + ")");
    try {
        c.resolve();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("", e.what());
    }
    return c;
}

std::vector<std::pair<std::string, std::string>> config_entries(const ScenarioConfig& c) {
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("channel_length", std::to_string(c.channel.length_n));
    out.emplace_back("sparsity", std::to_string(c.channel.sparsity_k));
    out.emplace_back("snr_db", format_double(c.snr_db));
    out.emplace_back("phi", format_double(c.noise.phi));
    out.emplace_back("alpha1", format_double(c.noise.alpha1));
    out.emplace_back("alpha2", format_double(c.noise.alpha2));
    out.emplace_back("sigma2_sq", format_double(c.noise.sigma2_sq));
    std::string algs;
    for (Algorithm a : c.algorithms) {
        if (!algs.empty()) algs += ",";
        algs += to_string(a);
    }
    out.emplace_back("algorithms", algs);
    for (Algorithm a : kAllAlgorithms) {
        const FilterParams& p = c.params_for(a);
        const std::string prefix = algorithm_key(a) + ".";
        out.emplace_back(prefix + "mu", format_double(p.mu));
        out.emplace_back(prefix + "lambda_r", format_double(p.lambda_r));
        out.emplace_back(prefix + "delta_r", format_double(p.delta_r));
    }
    out.emplace_back("iterations", std::to_string(c.iterations));
    out.emplace_back("runs", std::to_string(c.num_runs));
    out.emplace_back("seed", std::to_string(c.master_seed));
    return out;
}

std::string serialize_config(const ScenarioConfig& c) {
    std::string out;
    for (const auto& [k, v] : config_entries(c)) out += k + " = " + v + "\n";
    out += "# sigma1_sq = " + format_double(c.noise.sigma1_sq) + " (derived from snr_db)\n";
    return out;
}

namespace {

Preset make_preset(std::string name, std::string description, std::size_t k, double phi,
                   double sigma2_sq, std::optional<SweepSpec> sweep = std::nullopt) {
    ScenarioConfig c;
    c.channel.sparsity_k = k;
    c.snr_db = 10.0;
    c.noise.phi = phi;
    c.noise.sigma2_sq = sigma2_sq;
    c.resolve();
    return Preset{std::move(name), std::move(description), c, std::move(sweep)};
}

}  // namespace

const std::vector<Preset>& list_presets() {
    static const std::vector<Preset> presets = {
        make_preset("fig1", "K=8, SNR=10 dB, Gaussian noise (phi=0)", 8, 0.0, 0.0),
        make_preset("fig2", "K=8, SNR=10 dB, GMM phi=0.2, sigma2^2=20", 8, 0.2, 20.0),
        make_preset("fig3", "K=8, SNR=10 dB, GMM phi=0.2, sigma2^2=40", 8, 0.2, 40.0),
        make_preset("fig4", "K=4, SNR=10 dB, GMM phi=0.2, sigma2^2=40", 4, 0.2, 40.0),
        make_preset("fig5", "K=8, SNR=10 dB, GMM phi=0.2, sigma2^2=80", 8, 0.2, 80.0),
        make_preset("fig6", "K=8, SNR=10 dB, GMM sigma2^2=40, sweep phi in {0, 0.1, 0.2, 0.4}", 8, 0.0,
                    40.0, SweepSpec{"phi", {"0", "0.1", "0.2", "0.4"}}),
    };
    return presets;
}

const Preset& find_preset(std::string_view name) {
    for (const auto& p : list_presets()) {
        if (p.name == name) return p;
    }
    throw ConfigError("preset", "unknown preset '" + std::string(name) + "'");
}

}  // namespace rl1lae
