#ifndef RL1LAE_FILTERS_HPP
#define RL1LAE_FILTERS_HPP

// Adaptive FIR estimators driven one (regressor, observation) pair at a time:
//   LMS      w += mu * e * x
//   LAE      w += mu * sgn(e) * x
//   RL1-LMS  LMS      - mu * lambda_r * sgn(w(n)) / (delta_r + |w(n-1)|)
//   RL1-LAE  LAE      - mu * lambda_r * sgn(w(n)) / (delta_r + |w(n-1)|)
// with e = d - x^T w(n) and sgn(0) = 0.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rl1lae {

using WeightVector = std::vector<double>;

enum class Algorithm { LMS, LAE, RL1_LMS, RL1_LAE };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::LMS, Algorithm::LAE,
                                               Algorithm::RL1_LMS, Algorithm::RL1_LAE};

/// Display label, e.g. "RL1-LAE".
std::string_view to_string(Algorithm alg);
/// Accepts labels as printed by to_string, case-insensitive, '_' or '-'.
Algorithm parse_algorithm(std::string_view label);

/// Raised when an update would leave a non-finite coefficient.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(std::uint64_t iteration, const std::string& what)
        : std::runtime_error(what), iteration_(iteration) {}
    std::uint64_t iteration() const noexcept { return iteration_; }

private:
    std::uint64_t iteration_;
};

struct FilterParams {
    double mu = 0.01;
    double lambda_r = 0.0001;
    double delta_r = 0.01;

    /// Throws std::invalid_argument unless mu > 0, delta_r > 0, lambda_r >= 0 (all finite).
    void validate() const;
    friend bool operator==(const FilterParams&, const FilterParams&) = default;
};

struct FilterState {
    Algorithm algorithm = Algorithm::LAE;
    FilterParams params;
    WeightVector weights;           // w(n)
    WeightVector previous_weights;  // w(n-1)
    std::uint64_t iteration = 0;    // number of completed steps

    /// Zero-initialised state with w(0) = w(-1) = 0.
    static FilterState zeros(Algorithm alg, const FilterParams& params, std::size_t length);

    std::size_t length() const noexcept { return weights.size(); }
};

struct StepRecord {
    double prior_error = 0.0;  // e(n) = d(n) - x^T(n) w(n), before the update
    WeightVector updated_weights;
};

/// sgn(x) = x/|x| for x != 0 and exactly 0 for x == 0.
constexpr double sgn(double x) noexcept {
    return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
}

double dot(std::span<const double> a, std::span<const double> b);

/// [f]_i = 1 / (delta_r + |w_prev_i|). Throws std::invalid_argument for delta_r <= 0.
std::vector<double> compute_reweight_vector(std::span<const double> previous_weights,
                                            double delta_r);

/// |e| + lambda_r * sum_i |w_i| / (delta_r + |w_prev_i|).
/// Only the finite-difference oracle uses this; the update path never evaluates it.
double rl1_lae_cost(std::span<const double> weights, std::span<const double> previous_weights,
                    double error, double lambda_r, double delta_r);

// Each step function requires state.algorithm to match, a regressor of length
// state.length() and finite inputs; violations throw std::invalid_argument and
// leave the state untouched. A step whose result is non-finite throws
// DivergenceError, again without modifying the state. On success w(n-1) takes
// the old w(n) and the iteration counter advances.
StepRecord lms_step(FilterState& state, std::span<const double> regressor, double observation);
StepRecord lae_step(FilterState& state, std::span<const double> regressor, double observation);
StepRecord rl1_lms_step(FilterState& state, std::span<const double> regressor, double observation);
StepRecord rl1_lae_step(FilterState& state, std::span<const double> regressor, double observation);

/// Dispatches on state.algorithm.
StepRecord step(FilterState& state, std::span<const double> regressor, double observation);

/// Largest per-coefficient move a single step may make:
/// mu * (max_i |x_i| + lambda_r / delta_r) for the sign family (lambda_r = 0 for LAE).
/// Meaningless for LMS-type filters, whose motion scales with |e|.
double sign_step_bound(const FilterState& state, std::span<const double> regressor);

}  // namespace rl1lae

#endif  // RL1LAE_FILTERS_HPP
