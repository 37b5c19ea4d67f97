#pragma once

#include <optional>
#include <span>

#include "bgn/mle.hpp"

namespace bgn {

/// Gamma law in the rate form: rate^shape x^(shape-1) e^(-rate x) / Γ(shape).
struct GammaParams {
    double shape = 1.0;
    double rate = 1.0;
    void validate() const;
};

/// K intensity law: gamma texture (shape alpha_k) times gamma speckle
/// (looks), parameterized by its mean.
struct KParams {
    double alpha_k = 1.0;
    double looks = 1.0;
    double mean_intensity = 1.0;
    void validate() const;
};

/// G0 intensity law: inverse-gamma texture with roughness alpha_g < 0 and
/// scale gamma_g, times gamma speckle.
struct G0Params {
    double alpha_g = -2.0;
    double gamma_g = 1.0;
    double looks = 1.0;
    void validate() const;
};

double gamma_log_pdf(double x, const GammaParams& p);
double gamma_pdf(double x, const GammaParams& p);
double k_log_pdf(double x, const KParams& p);
double k_pdf(double x, const KParams& p);
double g0_log_pdf(double x, const G0Params& p);
double g0_pdf(double x, const G0Params& p);

double gamma_loglik(std::span<const double> data, const GammaParams& p);
double k_loglik(std::span<const double> data, const KParams& p);
double g0_loglik(std::span<const double> data, const G0Params& p);

using GammaFit = Fit<GammaParams>;
using KFit = Fit<KParams>;
using G0Fit = Fit<G0Params>;

/// Maximum likelihood in log-parameter space with numerical gradients.
/// Data must be positive with at least 10 values.
GammaFit fit_gamma(std::span<const double> data, const FitOptions& opts = {});
KFit fit_k(std::span<const double> data, const FitOptions& opts = {});
G0Fit fit_g0(std::span<const double> data, const FitOptions& opts = {});

/// Information criteria; lower is better. aicc is empty when n <= k + 1.
struct CriteriaTriple {
    double aic = 0.0;
    std::optional<double> aicc;
    double bic = 0.0;
};

CriteriaTriple criteria(double loglik, int k_params, long long n);

/// Free parameter counts used for model comparison.
inline constexpr int kBgnParamCount = 5;
inline constexpr int kGammaParamCount = 2;
inline constexpr int kKParamCount = 3;
inline constexpr int kG0ParamCount = 3;

}  // namespace bgn
