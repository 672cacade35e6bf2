#ifndef RL1LAE_SIGNALS_HPP
#define RL1LAE_SIGNALS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rl1lae/filters.hpp"

namespace rl1lae {

using Seed = std::uint64_t;

/// Independent random stream inside one trial.
enum class Stream : std::uint64_t { Channel = 1, Input = 2, Noise = 3 };

/// splitmix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed of one Monte-Carlo trial; depends only on (master, trial_index), so any
/// trial can be regenerated in isolation and in any order.
constexpr Seed derive_trial_seed(Seed master, std::uint64_t trial_index) noexcept {
    return mix64(mix64(master) ^ trial_index);
}

/// Seed of one stream within a trial.
constexpr Seed derive_stream_seed(Seed trial_seed, Stream stream) noexcept {
    return mix64(trial_seed ^ (static_cast<std::uint64_t>(stream) * 0xd1b54a32d192ed03ULL));
}

/// Two-component Gaussian mixture: (1-phi) N(alpha1, sigma1_sq) + phi N(alpha2, sigma2_sq).
struct GmmNoiseParams {
    double phi = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double sigma1_sq = 0.1;
    double sigma2_sq = 0.0;

    void validate() const;
    double mean() const noexcept { return (1.0 - phi) * alpha1 + phi * alpha2; }
    double variance() const noexcept;
    friend bool operator==(const GmmNoiseParams&, const GmmNoiseParams&) = default;
};

struct ChannelSpec {
    std::size_t length_n = 80;
    std::size_t sparsity_k = 8;

    /// Requires 1 <= K <= N.
    void validate() const;
    friend bool operator==(const ChannelSpec&, const ChannelSpec&) = default;
};

struct LabeledNoise {
    std::vector<double> samples;
    std::vector<std::uint8_t> component;  // 0 = background, 1 = impulsive
};

std::vector<double> sample_gmm_noise(const GmmNoiseParams& params, std::size_t count, Seed seed);

/// Same draws as sample_gmm_noise (bit-identical samples) plus the component of each.
LabeledNoise sample_gmm_noise_labeled(const GmmNoiseParams& params, std::size_t count, Seed seed);

/// K nonzero standard-normal taps at uniformly chosen distinct positions, scaled to unit L2 norm.
WeightVector generate_sparse_channel(const ChannelSpec& spec, Seed seed);

/// i.i.d. N(0, 1) training sequence (unit power).
std::vector<double> generate_training_signal(std::size_t length, Seed seed);

/// 10^(-snr_db/10), the background variance for a unit-power training signal.
double snr_to_sigma1_sq(double snr_db);

/// Tapped-delay window [x(n), x(n-1), ..., x(n-N+1)] with zeros before x(0).
void fill_regressor(std::span<const double> input, std::size_t n, std::span<double> out);

struct TrialSignals {
    WeightVector true_channel;
    std::vector<double> input_sequence;
    std::vector<double> noise_sequence;
    std::vector<double> observations;
};

/// d(n) = x(n)^T w + z(n) for an explicit channel, input and noise.
std::vector<double> synthesize_observations(std::span<const double> channel,
                                            std::span<const double> input,
                                            std::span<const double> noise);

/// One full realisation. Channel, input and noise each draw from their own
/// stream derived from `seed`.
TrialSignals synthesize_trial(const ChannelSpec& spec, const GmmNoiseParams& noise,
                              std::size_t length, Seed seed);

}  // namespace rl1lae

#endif  // RL1LAE_SIGNALS_HPP
