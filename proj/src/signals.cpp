#include "rl1lae/signals.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace rl1lae {

void GmmNoiseParams::validate() const {
    if (!(phi >= 0.0 && phi <= 1.0)) {
        throw std::invalid_argument("phi must lie in [0, 1], got " + std::to_string(phi));
    }
    if (!(std::isfinite(sigma1_sq) && sigma1_sq >= 0.0)) {
        throw std::invalid_argument("sigma1_sq must be finite and non-negative");
    }
    if (!(std::isfinite(sigma2_sq) && sigma2_sq >= 0.0)) {
        throw std::invalid_argument("sigma2_sq must be finite and non-negative");
    }
    if (!std::isfinite(alpha1) || !std::isfinite(alpha2)) {
        throw std::invalid_argument("mixture means must be finite");
    }
}

double GmmNoiseParams::variance() const noexcept {
    const double m = mean();
    return (1.0 - phi) * (sigma1_sq + alpha1 * alpha1) + phi * (sigma2_sq + alpha2 * alpha2) - m * m;
}

void ChannelSpec::validate() const {
    if (length_n == 0) throw std::invalid_argument("channel length N must be positive");
    if (sparsity_k == 0 || sparsity_k > length_n) {
        throw std::invalid_argument("sparsity K must satisfy 1 <= K <= N (K=" +
                                    std::to_string(sparsity_k) +
                                    ", N=" + std::to_string(length_n) + ")");
    }
}

LabeledNoise sample_gmm_noise_labeled(const GmmNoiseParams& params, std::size_t count, Seed seed) {
    params.validate();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double sd1 = std::sqrt(params.sigma1_sq);
    const double sd2 = std::sqrt(params.sigma2_sq);

    LabeledNoise out;
    out.samples.resize(count);
    out.component.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        // One uniform and one normal per sample regardless of outcome, so the
        // stream position never depends on the mixture parameters.
        const bool impulsive = uniform(rng) < params.phi;
        const double z = normal(rng);
        out.component[i] = impulsive ? 1 : 0;
        out.samples[i] = impulsive ? params.alpha2 + sd2 * z : params.alpha1 + sd1 * z;
    }
    return out;
}

std::vector<double> sample_gmm_noise(const GmmNoiseParams& params, std::size_t count, Seed seed) {
    return sample_gmm_noise_labeled(params, count, seed).samples;
}

WeightVector generate_sparse_channel(const ChannelSpec& spec, Seed seed) {
    spec.validate();
    std::mt19937_64 rng(seed);

    // Partial Fisher-Yates: the first K slots end up as a uniform K-subset.
    std::vector<std::size_t> positions(spec.length_n);
    std::iota(positions.begin(), positions.end(), std::size_t{0});
    for (std::size_t i = 0; i < spec.sparsity_k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, spec.length_n - 1);
        std::swap(positions[i], positions[pick(rng)]);
    }

    std::normal_distribution<double> normal(0.0, 1.0);
    WeightVector w(spec.length_n, 0.0);
    for (std::size_t i = 0; i < spec.sparsity_k; ++i) {
        double v = 0.0;
        while (v == 0.0) v = normal(rng);
        w[positions[i]] = v;
    }

    double norm_sq = 0.0;
    for (double v : w) norm_sq += v * v;
    const double norm = std::sqrt(norm_sq);
    for (double& v : w) v /= norm;
    return w;
}

std::vector<double> generate_training_signal(std::size_t length, Seed seed) {
    if (length == 0) throw std::invalid_argument("training signal length must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> x(length);
    for (double& v : x) v = normal(rng);
    return x;
}

double snr_to_sigma1_sq(double snr_db) {
    return std::pow(10.0, -snr_db / 10.0);
}

void fill_regressor(std::span<const double> input, std::size_t n, std::span<double> out) {
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = (k <= n && n - k < input.size()) ? input[n - k] : 0.0;
    }
}

std::vector<double> synthesize_observations(std::span<const double> channel,
                                            std::span<const double> input,
                                            std::span<const double> noise) {
    if (noise.size() != input.size()) {
        throw std::invalid_argument("noise and input sequences differ in length");
    }
    std::vector<double> regressor(channel.size());
    std::vector<double> d(input.size());
    for (std::size_t n = 0; n < input.size(); ++n) {
        fill_regressor(input, n, regressor);
        d[n] = dot(regressor, channel) + noise[n];
    }
    return d;
}

TrialSignals synthesize_trial(const ChannelSpec& spec, const GmmNoiseParams& noise,
                              std::size_t length, Seed seed) {
    TrialSignals t;
    t.true_channel = generate_sparse_channel(spec, derive_stream_seed(seed, Stream::Channel));
    t.input_sequence = generate_training_signal(length, derive_stream_seed(seed, Stream::Input));
    t.noise_sequence = sample_gmm_noise(noise, length, derive_stream_seed(seed, Stream::Noise));
    t.observations = synthesize_observations(t.true_channel, t.input_sequence, t.noise_sequence);
    return t;
}

}  // namespace rl1lae
