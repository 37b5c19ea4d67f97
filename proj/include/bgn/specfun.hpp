#pragma once

// Special functions used across the library: the gamma family, the incomplete
// beta ratio and its inverse, modified Bessel K, and the shape derivative of
// the complementary incomplete gamma function that enters the likelihood score.
//
// Every function is pure and re-entrant. Arguments outside the documented
// domain raise bgn::DomainError.

namespace bgn::specfun {

/// Iteration controls for the routines that sum series or polish roots.
struct Accuracy {
    double rel_tol = 1e-12;
    int max_iter = 500;

    void validate() const;
};

/// ln Γ(x), x > 0.
double ln_gamma(double x);

/// ln B(a, b) for a, b > 0.
double ln_beta(double a, double b);

/// ψ(x) = d/dx ln Γ(x), x > 0.
double digamma(double x);

/// Γ(a, x) = ∫_x^∞ t^{a-1} e^{-t} dt, not normalized.
double upper_inc_gamma(double a, double x);

/// ln Γ(a, x); finite where upper_inc_gamma underflows.
double ln_upper_inc_gamma(double a, double x);

/// Regularized lower and upper incomplete gamma ratios P(a,x), Q(a,x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

/// I_y(alpha, beta).
double reg_inc_beta(double y, double alpha, double beta);

/// 1 - I_y(alpha, beta) without cancellation.
double reg_inc_beta_complement(double y, double alpha, double beta);

/// Inverse of reg_inc_beta in y. The residual |I_y - p| is held to
/// acc.rel_tol * max(p, 1e-300) or to the spacing of adjacent doubles.
double reg_inc_beta_inv(double p, double alpha, double beta, const Accuracy& acc = {});

/// As reg_inc_beta_inv, but also reports 1 - y without cancellation.
double reg_inc_beta_inv(double p, double alpha, double beta, double* one_minus_y,
                        const Accuracy& acc = {});

/// y such that 1 - I_y(alpha, beta) = q; 1 - y goes to *one_minus_y.
double reg_inc_beta_inv_upper(double q, double alpha, double beta, double* one_minus_y);

/// x with P(a, x) = p for the unit-scale gamma law; p in [0, 1).
double gamma_quantile(double p, double a, const Accuracy& acc = {});

/// x with Q(a, x) = q, q in (0, 1]. Accurate for tiny q where 1 - q rounds.
double gamma_quantile_upper(double q, double a);

/// Modified Bessel function of the second kind K_nu(x), x > 0.
double bessel_k(double nu, double x);

/// ln K_nu(x); stays finite where K_nu overflows or underflows.
double ln_bessel_k(double nu, double x);

/// The Meijer-G special case T(3, a, x) that appears in
///   d/da Γ(a, x) = ln(x) Γ(a, x) + x T(3, a, x).
/// Uses the 2F2 series for x <= 3 and the integral form
///   x T(3, a, x) = ∫_x^∞ ln(t/x) t^{a-1} e^{-t} dt
/// (Gauss–Laguerre) above, where the alternating series loses digits.
double t3(double a, double x, const Accuracy& acc = {});

/// d/ds Γ(1/s, x^s) for s > 0, x >= 0 (x = 0 returns the limit).
double dgamma_ds(double s, double x, const Accuracy& acc = {});

/// d/ds ln Γ(1/s, x^s). Stays finite when Γ(1/s, x^s) underflows.
double dlog_gamma_ds(double s, double x, const Accuracy& acc = {});

namespace detail {

/// Largest argument for which t3 sums the 2F2 series.
inline constexpr double kT3SeriesLimit = 3.0;

/// Gauss–Laguerre sums for the shifted tail integrals
///   g0 = ∫_0^∞ (1 + t/x)^{a-1} e^{-t} dt,
///   g1 = ∫_0^∞ ln(1 + t/x) (1 + t/x)^{a-1} e^{-t} dt,
/// so that Γ(a, x) = x^{a-1} e^{-x} g0 and x T(3, a, x) = x^{a-1} e^{-x} g1.
struct ShiftedTail {
    double g0;
    double g1;
};
ShiftedTail shifted_tail(double a, double x);

/// d/ds ln Γ(1/s, w^s) with y = w^s, ln_w = ln w, and q = Q(1/s, y) already
/// known. Used by the score, which has these values in hand.
double dlog_gamma_ds_prepared(double s, double w, double ln_w, double y, double q,
                              double ln_gamma_a, double psi_a, const Accuracy& acc);

}  // namespace detail

}  // namespace bgn::specfun
