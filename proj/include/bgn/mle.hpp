#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "bgn/distribution.hpp"

namespace bgn {

struct FitOptions {
    int max_iter = 500;
    double grad_tol = 1e-6;
    int n_starts = 8;
    std::uint64_t seed = 0;
    /// Threads used for the starts; 0 picks the hardware count. The result
    /// does not depend on this value.
    int workers = 1;
    /// Optional per-iteration hook: (start index, iteration, log-likelihood).
    /// Called from worker threads when workers != 1.
    std::function<void(int, int, double)> observer;

    void validate() const;
};

/// Outcome of a maximum-likelihood fit for any parametric family.
template <class Params>
struct Fit {
    Params params{};
    double loglik = 0.0;
    bool converged = false;
    int iterations = 0;
    /// Largest score component of the per-observation log-likelihood in the
    /// unconstrained coordinates, on standardized data.
    double grad_norm = 0.0;
    int start_index = 0;
};

using FitResult = Fit<BgnParams>;

/// Score components in the order (s, mu, sigma, alpha, beta).
using Score = std::array<double, 5>;

/// Σ ln f(x_i). Returns -infinity when any term is undefined.
double loglik(std::span<const double> data, const BgnParams& p);

/// Gradient of loglik. DomainError when s < 1 and a datum equals mu.
Score score(std::span<const double> data, const BgnParams& p);

/// Log-likelihood and score in one pass.
double loglik_and_score(std::span<const double> data, const BgnParams& p, Score* out);

/// Unconstrained coordinates (ln s, mu, ln sigma, ln alpha, ln beta).
using Unconstrained = std::array<double, 5>;
Unconstrained to_unconstrained(const BgnParams& p);
BgnParams from_unconstrained(const Unconstrained& u);

/// Chain rule: score in unconstrained coordinates from the raw score.
Unconstrained unconstrained_gradient(const Score& raw, const BgnParams& p);

/// Deterministic starting points: index 0 is the median/IQR start, later
/// indices jitter alpha, beta and s log-uniformly within a factor of 4.
BgnParams init_params(std::span<const double> data);
std::vector<BgnParams> start_set(std::span<const double> data, int n_starts, std::uint64_t seed);

/// Multi-start maximum likelihood. Non-convergence is reported in the result.
FitResult fit_bgn(std::span<const double> data, const FitOptions& opts = {});

/// Location and scale used to standardize data before fitting.
struct DataScale {
    double center;
    double scale;
};
DataScale data_scale(std::span<const double> data);

}  // namespace bgn
