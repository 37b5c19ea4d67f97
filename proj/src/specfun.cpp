#include "bgn/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "bgn/error.hpp"
#include "math_policy.hpp"

namespace bgn::specfun {

namespace bm = boost::math;
using bgn::detail::boost_call;
using bgn::detail::MathPolicy;
using bgn::detail::require;

namespace {

constexpr int kLaguerreNodes = 32;

struct LaguerreRule {
    std::array<double, kLaguerreNodes> nodes{};
    std::array<double, kLaguerreNodes> weights{};
};

// Nodes and weights of the n-point Gauss–Laguerre rule (weight e^{-t}),
// Newton iteration on L_n from the usual asymptotic starting guesses.
LaguerreRule make_laguerre_rule() {
    constexpr int n = kLaguerreNodes;
    std::array<long double, n> x{};
    std::array<long double, n> w{};
    long double z = 0.0L;
    for (int i = 0; i < n; ++i) {
        if (i == 0) {
            z = 3.0L / (1.0L + 2.4L * n);
        } else if (i == 1) {
            z += 15.0L / (1.0L + 2.5L * n);
        } else {
            const long double ai = i - 1;
            z += ((1.0L + 2.55L * ai) / (1.9L * ai)) * (z - x[i - 2]);
        }
        long double p1 = 0, p2 = 0, pp = 0;
        for (int it = 0; it < 100; ++it) {
            p1 = 1.0L;
            p2 = 0.0L;
            for (int j = 1; j <= n; ++j) {
                const long double p3 = p2;
                p2 = p1;
                p1 = ((2 * j - 1 - z) * p2 - (j - 1) * p3) / j;
            }
            pp = (n * p1 - n * p2) / z;
            const long double z1 = z;
            z = z1 - p1 / pp;
            if (std::fabs(z - z1) <= 1e-18L * std::fabs(z)) break;
        }
        x[i] = z;
        w[i] = -1.0L / (pp * n * p2);
    }
    LaguerreRule rule;
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = static_cast<double>(x[i]);
        rule.weights[i] = static_cast<double>(w[i]);
    }
    return rule;
}

const LaguerreRule& laguerre_rule() {
    static const LaguerreRule rule = make_laguerre_rule();
    return rule;
}

// Newton steps with a bisection safeguard on an increasing function F,
// starting from a guess that is usually already within tolerance.
template <class F, class DF>
double polish_increasing_root(F&& f, DF&& df, double x, double target, double abs_tol,
                              double lo, double hi, int max_iter) {
    for (int it = 0; it < max_iter; ++it) {
        const double r = f(x) - target;
        if (std::fabs(r) <= abs_tol) return x;
        if (r > 0) {
            hi = x;
        } else {
            lo = x;
        }
        if (std::isfinite(hi) && std::nextafter(lo, hi) >= hi) return x;
        double d = std::numeric_limits<double>::quiet_NaN();
        try {
            d = df(x);
        } catch (const std::overflow_error&) {
        }
        double next = std::isfinite(d) && d > 0.0 ? x - r / d : std::numeric_limits<double>::quiet_NaN();
        if (!(next > lo && next < hi)) {
            next = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * std::max(x, 1.0);
        }
        if (next == x) return x;
        x = next;
    }
    throw ConvergenceError("root polish did not meet tolerance");
}

void check_positive(double v, const char* what) {
    require(std::isfinite(v) && v > 0.0, what);
}

// Hankel expansion of ln K_nu(x) for large x.
double ln_bessel_k_hankel(double nu, double x) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0;
    double sum = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (k * 8.0 * x);
        if (std::fabs(term) >= prev) break;
        sum += term;
        prev = std::fabs(term);
        if (prev < 1e-17 * std::fabs(sum)) break;
    }
    return 0.5 * std::log(std::numbers::pi / (2.0 * x)) - x + std::log(sum);
}

// Debye uniform expansion of ln K_nu(nu z), adequate for nu >= 15.
// Above this order the four-term uniform expansion is accurate to ~1e-12.
constexpr double kDebyeMinOrder = 100.0;

double ln_bessel_k_debye(double nu, double x) {
    const double z = x / nu;
    const double root = std::sqrt(1.0 + z * z);
    const double t = 1.0 / root;
    const double eta = root + std::log(z / (1.0 + root));
    const double t2 = t * t;
    const double u1 = t * (3.0 - 5.0 * t2) / 24.0;
    const double u2 = t2 * (81.0 + t2 * (-462.0 + t2 * 385.0)) / 1152.0;
    const double u3 =
        t * t2 * (30375.0 + t2 * (-369603.0 + t2 * (765765.0 - t2 * 425425.0))) / 414720.0;
    const double u4 =
        t2 * t2 *
        (4465125.0 + t2 * (-94121676.0 + t2 * (349922430.0 + t2 * (-446185740.0 + t2 * 185910725.0)))) /
        39813120.0;
    const double series = 1.0 - u1 / nu + u2 / (nu * nu) - u3 / (nu * nu * nu) + u4 / (nu * nu * nu * nu);
    return 0.5 * std::log(std::numbers::pi / (2.0 * nu)) - nu * eta - 0.25 * std::log1p(z * z) +
           std::log(series);
}

// Solves I_y(a, b) = p for y in ln y, for small p where Boost's inverse can
// stall. Newton steps with a bisection fallback on t = ln y <= 0.
double invert_lower_tail(double p, double a, double b, double* one_minus_y) {
    const double ln_p = std::log(p);
    const double ln_b = bm::lgamma(a, MathPolicy()) + bm::lgamma(b, MathPolicy()) - bm::lgamma(a + b, MathPolicy());
    auto residual = [&](double t) { return std::log(bm::ibeta(a, b, std::exp(t), MathPolicy())) - ln_p; };
    double lo = std::log(std::numeric_limits<double>::min());
    double hi = 0.0;
    // I_y ~ y^a / (a B) for small y.
    double t = std::min((ln_p + std::log(a) + ln_b) / a, std::log(0.5));
    t = std::max(t, lo);
    for (int it = 0; it < 400; ++it) {
        const double r = residual(t);
        if (r > 0) {
            hi = t;
        } else {
            lo = t;
        }
        const double y = std::exp(t);
        const double ln_i = std::log(bm::ibeta(a, b, y, MathPolicy()));
        const double slope = std::exp(a * t + (b - 1.0) * std::log1p(-y) - ln_b - ln_i);
        double next = t - r / slope;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - t) <= 1e-15 * std::max(1.0, std::fabs(t)) || hi - lo <= 1e-15 * std::fabs(lo)) {
            t = next;
            break;
        }
        t = next;
    }
    *one_minus_y = -std::expm1(t);
    return std::exp(t);
}

}  // namespace

void Accuracy::validate() const {
    if (!(rel_tol > 0.0 && rel_tol < 1e-3)) throw InvalidArgument("Accuracy.rel_tol must lie in (0, 1e-3)");
    if (max_iter < 10) throw InvalidArgument("Accuracy.max_iter must be at least 10");
}

double ln_gamma(double x) {
    check_positive(x, "ln_gamma: x must be positive and finite");
    return boost_call("ln_gamma", [&] { return bm::lgamma(x, MathPolicy()); });
}

double ln_beta(double a, double b) {
    check_positive(a, "ln_beta: a must be positive");
    check_positive(b, "ln_beta: b must be positive");
    return ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
}

double digamma(double x) {
    check_positive(x, "digamma: x must be positive and finite");
    return boost_call("digamma", [&] { return bm::digamma(x, MathPolicy()); });
}

double gamma_p(double a, double x) {
    check_positive(a, "gamma_p: a must be positive");
    require(x >= 0.0 && !std::isnan(x), "gamma_p: x must be nonnegative");
    if (std::isinf(x)) return 1.0;
    return boost_call("gamma_p", [&] { return bm::gamma_p(a, x, MathPolicy()); });
}

double gamma_q(double a, double x) {
    check_positive(a, "gamma_q: a must be positive");
    require(x >= 0.0 && !std::isnan(x), "gamma_q: x must be nonnegative");
    if (std::isinf(x)) return 0.0;
    return boost_call("gamma_q", [&] { return bm::gamma_q(a, x, MathPolicy()); });
}

double upper_inc_gamma(double a, double x) {
    check_positive(a, "upper_inc_gamma: a must be positive");
    require(x >= 0.0 && !std::isnan(x), "upper_inc_gamma: x must be nonnegative");
    if (std::isinf(x)) return 0.0;
    if (x == 0.0) return boost_call("tgamma", [&] { return bm::tgamma(a, MathPolicy()); });
    return boost_call("upper_inc_gamma", [&] { return bm::tgamma(a, x, MathPolicy()); });
}

double ln_upper_inc_gamma(double a, double x) {
    check_positive(a, "ln_upper_inc_gamma: a must be positive");
    require(x >= 0.0 && !std::isnan(x), "ln_upper_inc_gamma: x must be nonnegative");
    if (std::isinf(x)) return -std::numeric_limits<double>::infinity();
    const double q = gamma_q(a, x);
    if (q > 1e-280 || x <= detail::kT3SeriesLimit) return ln_gamma(a) + std::log(q);
    const auto tail = detail::shifted_tail(a, x);
    return (a - 1.0) * std::log(x) - x + std::log(tail.g0);
}

double reg_inc_beta(double y, double alpha, double beta) {
    check_positive(alpha, "reg_inc_beta: alpha must be positive");
    check_positive(beta, "reg_inc_beta: beta must be positive");
    require(y >= 0.0 && y <= 1.0, "reg_inc_beta: y must lie in [0, 1]");
    return boost_call("reg_inc_beta", [&] { return bm::ibeta(alpha, beta, y, MathPolicy()); });
}

double reg_inc_beta_complement(double y, double alpha, double beta) {
    check_positive(alpha, "reg_inc_beta_complement: alpha must be positive");
    check_positive(beta, "reg_inc_beta_complement: beta must be positive");
    require(y >= 0.0 && y <= 1.0, "reg_inc_beta_complement: y must lie in [0, 1]");
    return boost_call("reg_inc_beta_complement", [&] { return bm::ibetac(alpha, beta, y, MathPolicy()); });
}

double reg_inc_beta_inv(double p, double alpha, double beta, const Accuracy& acc) {
    double unused = 0.0;
    return reg_inc_beta_inv(p, alpha, beta, &unused, acc);
}

double reg_inc_beta_inv(double p, double alpha, double beta, double* one_minus_y, const Accuracy& acc) {
    check_positive(alpha, "reg_inc_beta_inv: alpha must be positive");
    check_positive(beta, "reg_inc_beta_inv: beta must be positive");
    require(p >= 0.0 && p <= 1.0, "reg_inc_beta_inv: p must lie in [0, 1]");
    acc.validate();
    if (p == 0.0) {
        *one_minus_y = 1.0;
        return 0.0;
    }
    if (p == 1.0) {
        *one_minus_y = 0.0;
        return 1.0;
    }
    double complement = 0.0;
    double y = 0.0;
    try {
        y = boost_call("reg_inc_beta_inv", [&] { return bm::ibeta_inv(alpha, beta, p, &complement, MathPolicy()); });
    } catch (const ConvergenceError&) {
        y = invert_lower_tail(p, alpha, beta, &complement);
    }
    const double tol = acc.rel_tol * std::max(p, 1e-300);
    const double polished = polish_increasing_root(
        [&](double v) { return bm::ibeta(alpha, beta, v, MathPolicy()); },
        [&](double v) { return bm::ibeta_derivative(alpha, beta, v, MathPolicy()); }, y, p, tol, 0.0, 1.0,
        acc.max_iter);
    if (polished != y) {
        y = polished;
        complement = 1.0 - y;
    }
    *one_minus_y = complement;
    return y;
}

double reg_inc_beta_inv_upper(double q, double alpha, double beta, double* one_minus_y) {
    check_positive(alpha, "reg_inc_beta_inv_upper: alpha must be positive");
    check_positive(beta, "reg_inc_beta_inv_upper: beta must be positive");
    require(q >= 0.0 && q <= 1.0, "reg_inc_beta_inv_upper: q must lie in [0, 1]");
    if (q == 0.0) {
        *one_minus_y = 0.0;
        return 1.0;
    }
    if (q == 1.0) {
        *one_minus_y = 1.0;
        return 0.0;
    }
    double complement = 0.0;
    double y = 0.0;
    try {
        y = boost_call("reg_inc_beta_inv_upper",
                       [&] { return bm::ibetac_inv(alpha, beta, q, &complement, MathPolicy()); });
    } catch (const ConvergenceError&) {
        // 1 - I_y(α, β) = I_{1-y}(β, α).
        complement = invert_lower_tail(q, beta, alpha, &y);
    }
    *one_minus_y = complement;
    return y;
}

double gamma_quantile(double p, double a, const Accuracy& acc) {
    check_positive(a, "gamma_quantile: a must be positive");
    require(p >= 0.0 && p < 1.0, "gamma_quantile: p must lie in [0, 1)");
    acc.validate();
    if (p == 0.0) return 0.0;
    const double x = boost_call("gamma_quantile", [&] { return bm::gamma_p_inv(a, p, MathPolicy()); });
    const double tol = acc.rel_tol * std::max(p, 1e-300);
    return polish_increasing_root([&](double v) { return bm::gamma_p(a, v, MathPolicy()); },
                                  [&](double v) { return bm::gamma_p_derivative(a, v, MathPolicy()); }, x,
                                  p, tol, 0.0, std::numeric_limits<double>::infinity(), acc.max_iter);
}

double gamma_quantile_upper(double q, double a) {
    check_positive(a, "gamma_quantile_upper: a must be positive");
    require(q > 0.0 && q <= 1.0, "gamma_quantile_upper: q must lie in (0, 1]");
    if (q == 1.0) return 0.0;
    return boost_call("gamma_quantile_upper", [&] { return bm::gamma_q_inv(a, q, MathPolicy()); });
}

double ln_bessel_k(double nu, double x) {
    require(std::isfinite(nu), "bessel_k: nu must be finite");
    check_positive(x, "bessel_k: x must be positive and finite");
    nu = std::fabs(nu);
    // Boost recurses upward from low order, so its cost grows linearly in nu.
    if (nu >= kDebyeMinOrder) return ln_bessel_k_debye(nu, x);
    double direct = 0.0;
    bool overflowed = false;
    try {
        direct = bm::cyl_bessel_k(nu, x, MathPolicy());
    } catch (const std::overflow_error&) {
        overflowed = true;
    } catch (const std::exception& e) {
        throw ConvergenceError(std::string("bessel_k: ") + e.what());
    }
    if (!overflowed && std::isfinite(direct) && direct > 1e-290 && direct < 1e290) return std::log(direct);
    if (nu >= 15.0) return ln_bessel_k_debye(nu, x);
    if (x > 20.0) return ln_bessel_k_hankel(nu, x);
    // Small-argument leading term; only reachable for tiny x.
    if (nu == 0.0) return std::log(-std::log(0.5 * x) - std::numbers::egamma);
    return ln_gamma(nu) - std::log(2.0) + nu * std::log(2.0 / x);
}

double bessel_k(double nu, double x) {
    require(std::isfinite(nu), "bessel_k: nu must be finite");
    check_positive(x, "bessel_k: x must be positive and finite");
    return std::exp(ln_bessel_k(nu, x));
}

namespace detail {

ShiftedTail shifted_tail(double a, double x) {
    const auto& rule = laguerre_rule();
    ShiftedTail out{0.0, 0.0};
    const double am1 = a - 1.0;
    for (int i = 0; i < kLaguerreNodes; ++i) {
        const double l = std::log1p(rule.nodes[i] / x);
        const double p = std::exp(am1 * l);
        out.g0 += rule.weights[i] * p;
        out.g1 += rule.weights[i] * l * p;
    }
    return out;
}

namespace {

// Σ_n (a/(a+n))^2 (-x)^n / n!, the 2F2(a,a;1+a,1+a;-x) factor.
double hyper_2f2(double a, double x, const Accuracy& acc) {
    double term = 1.0;
    double sum = 1.0;
    for (int n = 0; n < acc.max_iter; ++n) {
        const double ratio = (a + n) / (a + n + 1.0);
        term *= -x / (n + 1.0) * ratio * ratio;
        sum += term;
        if (n + 1 > x && std::fabs(term) <= acc.rel_tol * std::fabs(sum)) return sum;
    }
    throw ConvergenceError("t3: 2F2 series did not converge within max_iter terms");
}

}  // namespace

double dlog_gamma_ds_prepared(double s, double w, double ln_w, double y, double q, double ln_gamma_a,
                              double psi_a, const Accuracy& acc) {
    const double a = 1.0 / s;
    const double inv_s2 = 1.0 / (s * s);
    if (w == 0.0 || y == 0.0) return -psi_a * inv_s2;
    const double ln_y = s * ln_w;
    if (y <= kT3SeriesLimit) {
        // psi_tilde / Γ(a,y) with Γ(a,y) = Γ(a) q and
        //   y T(3,a,y) = y^a F / a^2 - Γ(a) (ln y - ψ(a)).
        const double f = hyper_2f2(a, y, acc);
        const double lower_part = std::exp(a * ln_y - ln_gamma_a) * f / (a * a) / q;
        const double y_t_over = lower_part - (ln_y - psi_a) / q;
        const double boundary = std::exp(ln_w - y + std::log(std::fabs(ln_w)) - ln_gamma_a) / q;
        return -inv_s2 * (ln_y + y_t_over) - std::copysign(boundary, ln_w);
    }
    const auto tail = shifted_tail(a, y);
    return -inv_s2 * (ln_y + tail.g1 / tail.g0) - y * ln_w / tail.g0;
}

}  // namespace detail

double t3(double a, double x, const Accuracy& acc) {
    check_positive(a, "t3: a must be positive");
    check_positive(x, "t3: x must be positive");
    acc.validate();
    if (x <= detail::kT3SeriesLimit) {
        const double f = detail::hyper_2f2(a, x, acc);
        const double gamma_a = std::exp(ln_gamma(a));
        return std::pow(x, a - 1.0) * f / (a * a) - gamma_a * (std::log(x) - digamma(a)) / x;
    }
    const auto tail = detail::shifted_tail(a, x);
    return std::exp((a - 2.0) * std::log(x) - x) * tail.g1;
}

double dlog_gamma_ds(double s, double x, const Accuracy& acc) {
    check_positive(s, "dlog_gamma_ds: s must be positive");
    require(std::isfinite(x) && x >= 0.0, "dlog_gamma_ds: x must be nonnegative");
    acc.validate();
    const double a = 1.0 / s;
    const double lga = ln_gamma(a);
    const double psi = digamma(a);
    if (x == 0.0) return -psi / (s * s);
    const double ln_x = std::log(x);
    const double y = std::exp(s * ln_x);
    const double q = y <= detail::kT3SeriesLimit ? gamma_q(a, y) : 0.0;
    return detail::dlog_gamma_ds_prepared(s, x, ln_x, y, q, lga, psi, acc);
}

double dgamma_ds(double s, double x, const Accuracy& acc) {
    check_positive(s, "dgamma_ds: s must be positive");
    require(std::isfinite(x) && x >= 0.0, "dgamma_ds: x must be nonnegative");
    const double a = 1.0 / s;
    const double y = x == 0.0 ? 0.0 : std::pow(x, s);
    const double ln_upper = ln_upper_inc_gamma(a, y);
    return std::exp(ln_upper) * dlog_gamma_ds(s, x, acc);
}

}  // namespace bgn::specfun
