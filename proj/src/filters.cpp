#include "rl1lae/filters.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace rl1lae {

namespace {

bool is_rl1(Algorithm alg) {
    return alg == Algorithm::RL1_LMS || alg == Algorithm::RL1_LAE;
}

bool is_sign(Algorithm alg) {
    return alg == Algorithm::LAE || alg == Algorithm::RL1_LAE;
}

void check_inputs(const FilterState& state, Algorithm expected,
                  std::span<const double> regressor, double observation) {
    if (state.algorithm != expected) {
        throw std::invalid_argument("filter state holds " + std::string(to_string(state.algorithm)) +
                                    ", step requested for " + std::string(to_string(expected)));
    }
    if (regressor.size() != state.weights.size() ||
        state.previous_weights.size() != state.weights.size()) {
        throw std::invalid_argument("regressor length " + std::to_string(regressor.size()) +
                                    " does not match filter length " +
                                    std::to_string(state.weights.size()));
    }
    if (!std::isfinite(observation)) {
        throw std::invalid_argument("non-finite observation");
    }
    if (!std::all_of(regressor.begin(), regressor.end(), [](double v) { return std::isfinite(v); })) {
        throw std::invalid_argument("non-finite regressor entry");
    }
}

// Shared update kernel. The error gain is e for the LMS family and sgn(e) for
// the sign family; the reweighted-l1 shrinkage reads sgn(w(n)) and |w(n-1)|.
StepRecord update(FilterState& state, Algorithm expected, std::span<const double> regressor,
                  double observation) {
    check_inputs(state, expected, regressor, observation);
    const FilterParams& p = state.params;
    const std::size_t n = state.weights.size();

    const double e = observation - dot(regressor, state.weights);
    const double gain = is_sign(expected) ? sgn(e) : e;

    WeightVector next(n);
    for (std::size_t i = 0; i < n; ++i) {
        next[i] = state.weights[i] + p.mu * gain * regressor[i];
    }
    if (is_rl1(expected)) {
        for (std::size_t i = 0; i < n; ++i) {
            next[i] -= p.mu * p.lambda_r * sgn(state.weights[i]) /
                       (p.delta_r + std::abs(state.previous_weights[i]));
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(next[i])) {
            throw DivergenceError(state.iteration,
                                  std::string(to_string(expected)) + " diverged at iteration " +
                                      std::to_string(state.iteration) + " (coefficient " +
                                      std::to_string(i) + ")");
        }
    }

    state.previous_weights = std::move(state.weights);
    state.weights = next;
    ++state.iteration;
    return StepRecord{e, std::move(next)};
}

}  // namespace

std::string_view to_string(Algorithm alg) {
    switch (alg) {
        case Algorithm::LMS: return "LMS";
        case Algorithm::LAE: return "LAE";
        case Algorithm::RL1_LMS: return "RL1-LMS";
        case Algorithm::RL1_LAE: return "RL1-LAE";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view label) {
    std::string norm;
    for (char c : label) {
        norm.push_back(c == '_' ? '-' : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
    for (Algorithm alg : kAllAlgorithms) {
        if (norm == to_string(alg)) return alg;
    }
    throw std::invalid_argument("unknown algorithm '" + std::string(label) + "'");
}

void FilterParams::validate() const {
    if (!(std::isfinite(mu) && mu > 0.0)) {
        throw std::invalid_argument("mu must be a finite positive number");
    }
    if (!(std::isfinite(delta_r) && delta_r > 0.0)) {
        throw std::invalid_argument("delta_r must be a finite positive number");
    }
    if (!(std::isfinite(lambda_r) && lambda_r >= 0.0)) {
        throw std::invalid_argument("lambda_r must be a finite non-negative number");
    }
}

FilterState FilterState::zeros(Algorithm alg, const FilterParams& params, std::size_t length) {
    params.validate();
    if (length == 0) throw std::invalid_argument("filter length must be positive");
    return FilterState{alg, params, WeightVector(length, 0.0), WeightVector(length, 0.0), 0};
}

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

std::vector<double> compute_reweight_vector(std::span<const double> previous_weights,
                                            double delta_r) {
    if (!(delta_r > 0.0)) throw std::invalid_argument("delta_r must be positive");
    std::vector<double> f(previous_weights.size());
    std::transform(previous_weights.begin(), previous_weights.end(), f.begin(),
                   [delta_r](double w) { return 1.0 / (delta_r + std::abs(w)); });
    return f;
}

double rl1_lae_cost(std::span<const double> weights, std::span<const double> previous_weights,
                    double error, double lambda_r, double delta_r) {
    if (!(delta_r > 0.0)) throw std::invalid_argument("delta_r must be positive");
    if (lambda_r < 0.0) throw std::invalid_argument("lambda_r must be non-negative");
    if (weights.size() != previous_weights.size()) {
        throw std::invalid_argument("weight vectors differ in length");
    }
    double penalty = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        penalty += std::abs(weights[i]) / (delta_r + std::abs(previous_weights[i]));
    }
    return std::abs(error) + lambda_r * penalty;
}

StepRecord lms_step(FilterState& state, std::span<const double> regressor, double observation) {
    return update(state, Algorithm::LMS, regressor, observation);
}

StepRecord lae_step(FilterState& state, std::span<const double> regressor, double observation) {
    return update(state, Algorithm::LAE, regressor, observation);
}

StepRecord rl1_lms_step(FilterState& state, std::span<const double> regressor, double observation) {
    return update(state, Algorithm::RL1_LMS, regressor, observation);
}

StepRecord rl1_lae_step(FilterState& state, std::span<const double> regressor, double observation) {
    return update(state, Algorithm::RL1_LAE, regressor, observation);
}

StepRecord step(FilterState& state, std::span<const double> regressor, double observation) {
    return update(state, state.algorithm, regressor, observation);
}

double sign_step_bound(const FilterState& state, std::span<const double> regressor) {
    double max_x = 0.0;
    for (double v : regressor) max_x = std::max(max_x, std::abs(v));
    const double shrink = is_rl1(state.algorithm) ? state.params.lambda_r / state.params.delta_r : 0.0;
    return state.params.mu * (max_x + shrink);
}

}  // namespace rl1lae
