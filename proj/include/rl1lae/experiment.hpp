#ifndef RL1LAE_EXPERIMENT_HPP
#define RL1LAE_EXPERIMENT_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rl1lae/filters.hpp"
#include "rl1lae/signals.hpp"

namespace rl1lae {

struct ScenarioConfig {
    ChannelSpec channel{80, 8};
    GmmNoiseParams noise{0.2, 0.0, 0.0, 0.1, 40.0};
    double snr_db = 10.0;
    std::array<FilterParams, 4> filter_params{};  // indexed by Algorithm
    std::vector<Algorithm> algorithms{std::begin(kAllAlgorithms), std::end(kAllAlgorithms)};
    std::size_t iterations = 3000;
    std::size_t num_runs = 1000;
    Seed master_seed = 1;

    FilterParams& params_for(Algorithm alg) { return filter_params[static_cast<std::size_t>(alg)]; }
    const FilterParams& params_for(Algorithm alg) const {
        return filter_params[static_cast<std::size_t>(alg)];
    }
    /// Sets the same parameters for every algorithm.
    void set_all_params(const FilterParams& p) { filter_params.fill(p); }

    /// Derives noise.sigma1_sq from snr_db, then validates everything.
    /// Throws std::invalid_argument on any violated constraint.
    void resolve();
    void validate() const;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// ||estimate - truth||^2 / ||truth||^2.
double normalized_mse(std::span<const double> estimate, std::span<const double> truth);

/// Learning curve of one algorithm in one trial. mse[k] is the normalised MSE
/// after k+1 updates; a diverged run stops at the last finite iterate.
struct TrialCurve {
    Algorithm algorithm = Algorithm::LAE;
    std::vector<double> mse;
    bool diverged = false;
};

/// Bounded-increment audit of the sign-family filters.
struct IncrementAudit {
    std::uint64_t steps_checked = 0;
    std::uint64_t violations = 0;
    double worst_ratio = 0.0;  // max over steps of ||dw||_inf / bound

    void merge(const IncrementAudit& other);
};

struct TrialResult {
    std::uint64_t trial_index = 0;
    std::vector<TrialCurve> curves;  // same order as config.algorithms
    IncrementAudit audit;
};

/// Drives one zero-initialised filter through every sample of `signals`.
/// Sign-family steps are checked against sign_step_bound and tallied in `audit`.
TrialCurve run_curve(Algorithm algorithm, const FilterParams& params, const TrialSignals& signals,
                     IncrementAudit& audit);

/// One shared channel/input/noise realisation, seeded from
/// (config.master_seed, trial_index), driven through every configured
/// algorithm from zero weights. `config` must already be resolved.
TrialResult run_trial(const ScenarioConfig& config, std::uint64_t trial_index);

struct MseTrajectory {
    Algorithm algorithm = Algorithm::LAE;
    std::vector<double> mse_per_iteration;  // linear scale; empty if every run diverged
    std::size_t num_runs = 0;
    std::size_t diverged_runs = 0;
};

/// Running element-wise sum of trial curves. Trials must be added in trial
/// order; that fixes the floating-point summation order and makes the mean
/// independent of how the trials were scheduled.
class TrajectoryAccumulator {
public:
    TrajectoryAccumulator(std::span<const Algorithm> algorithms, std::size_t iterations);

    void add(const TrialResult& trial);
    std::vector<MseTrajectory> mean() const;
    const IncrementAudit& audit() const noexcept { return audit_; }

private:
    struct Slot {
        Algorithm algorithm;
        std::vector<double> sum;
        std::size_t completed = 0;
        std::size_t diverged = 0;
    };
    std::vector<Slot> slots_;
    std::size_t iterations_;
    IncrementAudit audit_;
};

struct MonteCarloResult {
    std::vector<MseTrajectory> trajectories;  // same order as config.algorithms
    IncrementAudit audit;
};

struct ExecutionOptions {
    int threads = 0;               // 0: OpenMP default
    std::size_t trials_per_batch = 64;
};

/// Trials run in parallel batches; each batch is reduced in trial order, so the
/// result is bitwise identical to run_monte_carlo_serial for any thread count.
MonteCarloResult run_monte_carlo(const ScenarioConfig& config, const ExecutionOptions& exec = {});

/// Single-threaded reference.
MonteCarloResult run_monte_carlo_serial(const ScenarioConfig& config);

/// Mean of the last ceil(tail_fraction * size) entries, in dB.
double steady_state_mse(const MseTrajectory& trajectory, double tail_fraction = 0.1);
double steady_state_mse(std::span<const double> mse_linear, double tail_fraction = 0.1);

inline double to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace rl1lae

#endif  // RL1LAE_EXPERIMENT_HPP
