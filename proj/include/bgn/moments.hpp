#pragma once

#include "bgn/distribution.hpp"

namespace bgn {

/// Cutoffs for the infinite sums behind the series moments.
struct SeriesTruncation {
    int j_max = 40;     // binomial expansion of (1 - Φ)^(β-1)
    int k_max = 60;     // power expansion of Φ^(α-1)
    int m_max = 200;    // coefficients of the powered incomplete-gamma series
    double tol = 1e-8;  // relative tolerance for dropping tail terms

    void validate() const;
};

/// Coefficient of Φ^k in the expansion of Φ^alpha through powers of 1 - Φ:
///   v_k(α) = Σ_{m=k}^{m_max} (-1)^{k+m} C(α, m) C(m, k).
/// Integer alpha gives the exact finite sum. For non-integer alpha the sum is
/// extrapolated with the Levin u-transform when it converges (k < alpha) and
/// raises DivergenceError when it does not (k > alpha).
double v_coeff(double alpha, int k, int m_max = 200);

/// c_{m,j}: coefficient of y^m in (Σ_n (-1)^n y^n / ((1/s + n) n!))^j, by
/// the power-series recursion. Intended for small m; the recursion loses
/// precision geometrically as m grows.
double c_coeff(int m, int j, double s);

/// J_{i,k} = ∫_0^∞ z^i φ_s(z) Φ_s(z)^k dz from the incomplete-gamma series.
/// The series is summed in extended precision on [0, L] and the remaining
/// tail, where Φ_s^k = 1 to within tol, is added in closed form.
double j_integral(int i, int k, double s, const SeriesTruncation& trunc = {});

struct SeriesMoment {
    double value;
    /// True when alpha and beta are integers, so every sum is finite and the
    /// value is exact up to the J evaluation tolerance. Otherwise the j-sum
    /// is truncated at j_max and the value is a heuristic.
    bool validated;
};

/// E(X^n) from the binomial and power-series expansion of the density,
///   E(X^n) = Σ_i C(n,i) μ^{n-i} σ^i E(Z^i),
///   E(Z^i) = B(α,β)^{-1} Σ_j (-1)^j C(β-1, j)
///            Σ_k [v_k(j+α-1) + (-1)^{i+k} C(j+α-1, k)] J_{i,k}.
double moment_series(int n, const BgnParams& p, const SeriesTruncation& trunc = {});
SeriesMoment moment_series_checked(int n, const BgnParams& p, const SeriesTruncation& trunc = {});

/// E(X^n) by adaptive quadrature of x^n f(x); reference for moment_series.
double moment_quadrature(int n, const BgnParams& p);

}  // namespace bgn
