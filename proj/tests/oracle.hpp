#pragma once

// Independent reference computations for tests: adaptive quadrature, central
// differences, and bisection. Nothing here calls into the library.

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace oracle {

namespace detail {

inline long double simpson(const std::function<long double(long double)>& f, long double a,
                           long double fa, long double b, long double fb, long double m,
                           long double fm) {
    return (b - a) / 6.0L * (fa + 4.0L * fm + fb);
}

inline long double adapt(const std::function<long double(long double)>& f, long double a,
                         long double fa, long double b, long double fb, long double m,
                         long double fm, long double whole, long double tol, int depth) {
    const long double lm = 0.5L * (a + m);
    const long double rm = 0.5L * (m + b);
    const long double flm = f(lm);
    const long double frm = f(rm);
    const long double left = simpson(f, a, fa, m, fm, lm, flm);
    const long double right = simpson(f, m, fm, b, fb, rm, frm);
    const long double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0L * tol) return left + right + delta / 15.0L;
    return adapt(f, a, fa, m, fm, lm, flm, left, 0.5L * tol, depth - 1) +
           adapt(f, m, fm, b, fb, rm, frm, right, 0.5L * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson on [a, b].
inline double integrate(const std::function<long double(long double)>& f, long double a,
                        long double b, long double tol = 1e-13L, int depth = 48) {
    const long double m = 0.5L * (a + b);
    const long double fa = f(a);
    const long double fb = f(b);
    const long double fm = f(m);
    const long double whole = detail::simpson(f, a, fa, b, fb, m, fm);
    return static_cast<double>(detail::adapt(f, a, fa, b, fb, m, fm, whole, tol, depth));
}

/// ∫_a^∞ f via the substitution t = a + u/(1-u).
inline double integrate_to_inf(const std::function<long double(long double)>& f, long double a,
                               long double tol = 1e-13L) {
    return integrate(
        [&](long double u) -> long double {
            if (u >= 1.0L) return 0.0L;
            const long double one_minus = 1.0L - u;
            const long double v = f(a + u / one_minus);
            return std::isfinite(v) ? v / (one_minus * one_minus) : 0.0L;
        },
        0.0L, 1.0L, tol);
}

/// Central difference with step h.
inline double derivative(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Fourth-order central difference with step h.
inline double derivative5(const std::function<double(double)>& f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12.0 * h);
}

/// Root of an increasing function on [lo, hi] by bisection.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, int iters = 200) {
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (f(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

inline bool rel_close(double got, double want, double rel) {
    return std::fabs(got - want) <= rel * std::fabs(want);
}

}  // namespace oracle
