#include "rl1lae/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <string>

#include <omp.h>

namespace rl1lae {

namespace {

bool is_sign_family(Algorithm alg) {
    return alg == Algorithm::LAE || alg == Algorithm::RL1_LAE;
}

// Bound check for one sign-algorithm step. The computed difference w' - w
// carries rounding error of a few ulps of the operands, so the bound gets
// that much slack.
void audit_step(IncrementAudit& audit, std::span<const double> before,
                std::span<const double> after, double bound) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    double worst = 0.0;
    bool violated = false;
    for (std::size_t i = 0; i < before.size(); ++i) {
        const double move = std::abs(after[i] - before[i]);
        const double slack = 4.0 * eps * (bound + std::max(std::abs(before[i]), std::abs(after[i])));
        if (move > bound + slack) violated = true;
        worst = std::max(worst, move);
    }
    ++audit.steps_checked;
    if (violated) ++audit.violations;
    if (bound > 0.0) audit.worst_ratio = std::max(audit.worst_ratio, worst / bound);
}

}  // namespace

void ScenarioConfig::resolve() {
    if (!std::isfinite(snr_db)) throw std::invalid_argument("snr_db must be finite");
    noise.sigma1_sq = snr_to_sigma1_sq(snr_db);
    validate();
}

void ScenarioConfig::validate() const {
    channel.validate();
    noise.validate();
    for (const auto& p : filter_params) p.validate();
    if (iterations < 1) throw std::invalid_argument("iterations must be at least 1");
    if (num_runs < 1) throw std::invalid_argument("runs must be at least 1");
    if (algorithms.empty()) throw std::invalid_argument("at least one algorithm is required");
    for (std::size_t i = 0; i < algorithms.size(); ++i) {
        for (std::size_t j = i + 1; j < algorithms.size(); ++j) {
            if (algorithms[i] == algorithms[j]) {
                throw std::invalid_argument("algorithm listed twice: " +
                                            std::string(to_string(algorithms[i])));
            }
        }
    }
}

double normalized_mse(std::span<const double> estimate, std::span<const double> truth) {
    if (estimate.size() != truth.size()) {
        throw std::invalid_argument("estimate and truth differ in length");
    }
    double err = 0.0;
    double ref = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const double d = estimate[i] - truth[i];
        err += d * d;
        ref += truth[i] * truth[i];
    }
    if (!(ref > 0.0)) throw std::invalid_argument("normalized_mse: truth has zero norm");
    return err / ref;
}

void IncrementAudit::merge(const IncrementAudit& other) {
    steps_checked += other.steps_checked;
    violations += other.violations;
    worst_ratio = std::max(worst_ratio, other.worst_ratio);
}

TrialCurve run_curve(Algorithm alg, const FilterParams& params, const TrialSignals& sig,
                     IncrementAudit& audit) {
    const std::size_t n_taps = sig.true_channel.size();
    const std::size_t steps = sig.observations.size();
    FilterState state = FilterState::zeros(alg, params, n_taps);
    TrialCurve curve{alg, {}, false};
    curve.mse.reserve(steps);
    const bool audited = is_sign_family(alg);

    std::vector<double> regressor(n_taps);
    for (std::size_t n = 0; n < steps; ++n) {
        fill_regressor(sig.input_sequence, n, regressor);
        const double bound = audited ? sign_step_bound(state, regressor) : 0.0;
        try {
            step(state, regressor, sig.observations[n]);
        } catch (const DivergenceError&) {
            curve.diverged = true;
            break;
        }
        if (audited) audit_step(audit, state.previous_weights, state.weights, bound);
        curve.mse.push_back(normalized_mse(state.weights, sig.true_channel));
    }
    return curve;
}

TrialResult run_trial(const ScenarioConfig& config, std::uint64_t trial_index) {
    const TrialSignals sig =
        synthesize_trial(config.channel, config.noise, config.iterations,
                         derive_trial_seed(config.master_seed, trial_index));

    TrialResult result;
    result.trial_index = trial_index;
    result.curves.reserve(config.algorithms.size());
    for (Algorithm alg : config.algorithms) {
        result.curves.push_back(run_curve(alg, config.params_for(alg), sig, result.audit));
    }
    return result;
}

TrajectoryAccumulator::TrajectoryAccumulator(std::span<const Algorithm> algorithms,
                                             std::size_t iterations)
    : iterations_(iterations) {
    for (Algorithm alg : algorithms) {
        slots_.push_back(Slot{alg, std::vector<double>(iterations, 0.0), 0, 0});
    }
}

void TrajectoryAccumulator::add(const TrialResult& trial) {
    if (trial.curves.size() != slots_.size()) {
        throw std::invalid_argument("trial result does not match the accumulator's algorithms");
    }
    for (std::size_t a = 0; a < slots_.size(); ++a) {
        const TrialCurve& curve = trial.curves[a];
        Slot& slot = slots_[a];
        if (curve.algorithm != slot.algorithm) {
            throw std::invalid_argument("trial result algorithm order mismatch");
        }
        if (curve.diverged) {
            ++slot.diverged;
            continue;
        }
        if (curve.mse.size() != iterations_) {
            throw std::invalid_argument("trial curve length differs from the configured iterations");
        }
        for (std::size_t n = 0; n < iterations_; ++n) slot.sum[n] += curve.mse[n];
        ++slot.completed;
    }
    audit_.merge(trial.audit);
}

std::vector<MseTrajectory> TrajectoryAccumulator::mean() const {
    std::vector<MseTrajectory> out;
    out.reserve(slots_.size());
    for (const Slot& slot : slots_) {
        MseTrajectory t;
        t.algorithm = slot.algorithm;
        t.num_runs = slot.completed + slot.diverged;
        t.diverged_runs = slot.diverged;
        if (slot.completed > 0) {
            t.mse_per_iteration.resize(iterations_);
            const double count = static_cast<double>(slot.completed);
            for (std::size_t n = 0; n < iterations_; ++n) t.mse_per_iteration[n] = slot.sum[n] / count;
        }
        out.push_back(std::move(t));
    }
    return out;
}

MonteCarloResult run_monte_carlo(const ScenarioConfig& config, const ExecutionOptions& exec) {
    config.validate();
    TrajectoryAccumulator acc(config.algorithms, config.iterations);
    const std::size_t batch = std::max<std::size_t>(1, exec.trials_per_batch);
    const int threads = exec.threads > 0 ? exec.threads : omp_get_max_threads();

    std::vector<TrialResult> pending(std::min(batch, config.num_runs));
    for (std::size_t first = 0; first < config.num_runs; first += batch) {
        const std::size_t count = std::min(batch, config.num_runs - first);
        const auto count_i = static_cast<std::ptrdiff_t>(count);

        std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
        for (std::ptrdiff_t i = 0; i < count_i; ++i) {
            try {
                pending[static_cast<std::size_t>(i)] = run_trial(config, first + static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical(rl1lae_trial_failure)
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);

        for (std::size_t i = 0; i < count; ++i) acc.add(pending[i]);
    }
    return MonteCarloResult{acc.mean(), acc.audit()};
}

MonteCarloResult run_monte_carlo_serial(const ScenarioConfig& config) {
    config.validate();
    TrajectoryAccumulator acc(config.algorithms, config.iterations);
    for (std::size_t m = 0; m < config.num_runs; ++m) acc.add(run_trial(config, m));
    return MonteCarloResult{acc.mean(), acc.audit()};
}

double steady_state_mse(std::span<const double> mse_linear, double tail_fraction) {
    if (mse_linear.empty()) throw std::invalid_argument("steady_state_mse: empty trajectory");
    if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
        throw std::invalid_argument("tail_fraction must lie in (0, 1]");
    }
    const double size = static_cast<double>(mse_linear.size());
    // The 1e-9 guard keeps e.g. 0.1 * 3000 from rounding up to 301.
    auto tail = static_cast<std::size_t>(std::ceil(tail_fraction * size - 1e-9));
    tail = std::clamp<std::size_t>(tail, 1, mse_linear.size());
    double sum = 0.0;
    for (std::size_t i = mse_linear.size() - tail; i < mse_linear.size(); ++i) sum += mse_linear[i];
    return to_db(sum / static_cast<double>(tail));
}

double steady_state_mse(const MseTrajectory& trajectory, double tail_fraction) {
    return steady_state_mse(trajectory.mse_per_iteration, tail_fraction);
}

}  // namespace rl1lae
