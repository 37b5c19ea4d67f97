#include "bgn/moments.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "bgn/error.hpp"
#include "bgn/specfun.hpp"

namespace bgn {

namespace {

using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<80>>;
constexpr int kRealDigits = 80;

bool is_integer(double x) { return std::fabs(x - std::round(x)) < 1e-12; }

// Generalized binomial coefficient C(x, m) for real x and integer m >= 0.
double binom(double x, int m) {
    double c = 1.0;
    for (int r = 1; r <= m; ++r) c *= (x - r + 1) / r;
    return c;
}

// Levin u-transform of the series whose first K + 1 terms are given.
double levin_u(const std::vector<double>& terms, int K) {
    double partial = 0.0;
    double num = 0.0;
    double den = 0.0;
    double choose = 1.0;
    for (int j = 0; j <= K; ++j) {
        partial += terms[j];
        const double omega = (1.0 + j) * terms[j];
        const double w = ((j % 2) ? -choose : choose) * std::pow((1.0 + j) / (1.0 + K), K - 1);
        num += w * partial / omega;
        den += w / omega;
        choose = choose * (K - j) / (j + 1);
    }
    return num / den;
}

// Coefficients of A(y)^j, A(y) = Σ_n (-1)^n y^n / ((a + n) n!), through y^m_top.
std::vector<Real> powered_series(int j, double a, int m_top) {
    std::vector<Real> base(m_top + 1);
    Real fact = 1;
    for (int n = 0; n <= m_top; ++n) {
        if (n > 0) fact *= n;
        const Real v = Real(1) / ((Real(a) + n) * fact);
        base[n] = (n % 2) ? Real(-v) : v;
    }
    std::vector<Real> out(m_top + 1, Real(0));
    out[0] = 1;
    for (int p = 0; p < j; ++p) {
        std::vector<Real> next(m_top + 1, Real(0));
        for (int m = 0; m <= m_top; ++m) {
            Real acc = 0;
            for (int r = 0; r <= m; ++r) acc += base[r] * out[m - r];
            next[m] = acc;
        }
        out.swap(next);
    }
    return out;
}

// γ(b + m, L) for m = 0..m_top: series at the top, then the stable downward
// recurrence γ(x, L) = (γ(x + 1, L) + L^x e^{-L}) / x.
std::vector<Real> lower_gamma_ladder(double b, double L, int m_top) {
    std::vector<Real> out(m_top + 1);
    const Real lr = L;
    const Real ln_l = log(lr);
    const Real x_top = Real(b) + m_top;
    Real term = 1 / x_top;
    Real sum = term;
    for (int n = 1; n < 100000; ++n) {
        term *= lr / (x_top + n);
        sum += term;
        if (term < sum * Real(1e-70)) break;
    }
    out[m_top] = exp(x_top * ln_l - lr) * sum;
    for (int m = m_top - 1; m >= 0; --m) {
        const Real x = Real(b) + m;
        out[m] = (out[m + 1] + exp(x * ln_l - lr)) / x;
    }
    return out;
}

// Series over m for a fixed j: Σ_m c_{m,j} γ(m + b, L). Throws when the terms
// have not died out by m_max or when cancellation exhausts the working digits.
Real inner_series(int j, double a, double b, double L, const SeriesTruncation& trunc) {
    const int m_top = trunc.m_max;
    const auto c = powered_series(j, a, m_top);
    const auto g = lower_gamma_ladder(b, L, m_top);
    Real sum = 0;
    Real biggest = 0;
    int quiet = 0;
    for (int m = 0; m <= m_top; ++m) {
        const Real t = c[m] * g[m];
        sum += t;
        biggest = std::max(biggest, Real(abs(t)));
        // Terms rise until m ~ jL before they decay.
        if (m > j * L && abs(t) <= abs(sum) * Real(trunc.tol) * Real(1e-8)) {
            if (++quiet >= 4) {
                const double lost = static_cast<double>(log10(biggest / abs(sum)));
                if (lost > kRealDigits - 20) {
                    throw DivergenceError("j_integral: cancellation exceeds working precision");
                }
                return sum;
            }
        } else {
            quiet = 0;
        }
    }
    throw DivergenceError("j_integral: series over m did not settle within m_max terms");
}

// Weight of Φ^k in Φ^power on the positive half line.
double power_weight(double power, int k, const SeriesTruncation& trunc) {
    if (power == 0.0) return k == 0 ? 1.0 : 0.0;
    if (power < 0.0) throw DivergenceError("moment_series: power expansion requires alpha >= 1");
    return v_coeff(power, k, std::max(trunc.m_max, k));
}

}  // namespace

void SeriesTruncation::validate() const {
    if (j_max < 1 || k_max < 1 || m_max < 1) throw InvalidArgument("SeriesTruncation: cutoffs must be at least 1");
    if (!(tol > 0.0 && tol < 1e-2)) throw InvalidArgument("SeriesTruncation: tol must lie in (0, 1e-2)");
}

double v_coeff(double alpha, int k, int m_max) {
    if (!(std::isfinite(alpha) && alpha > 0.0)) throw DomainError("v_coeff: alpha must be positive");
    if (k < 0) throw DomainError("v_coeff: k must be nonnegative");
    if (m_max < k) throw DomainError("v_coeff: m_max must be at least k");
    // (-1)^{k+m} C(α,m) C(m,k) = C(α,k) (-1)^{m-k} C(α-k, m-k).
    const double lead = binom(alpha, k);
    if (is_integer(alpha)) {
        const int top = std::min(m_max, static_cast<int>(std::round(alpha)));
        double sum = 0.0;
        for (int m = k; m <= top; ++m) sum += ((m - k) % 2 ? -1.0 : 1.0) * binom(alpha, m) * binom(m, k);
        return sum;
    }
    const double x = alpha - k;
    std::vector<double> terms;
    double partial = 0.0;
    for (int r = 0; r <= m_max - k; ++r) {
        terms.push_back((r % 2 ? -1.0 : 1.0) * binom(x, r));
        partial += terms.back();
    }
    if (x < 0.0) {
        // Partial sums (-1)^R C(x - 1, R) grow like R^{-x}.
        throw DivergenceError("v_coeff: series diverges for k > alpha");
    }
    constexpr int kShort = 8;
    constexpr int kLong = 10;
    if (static_cast<int>(terms.size()) <= kLong) return lead * partial;
    const double shorter = levin_u(terms, kShort);
    const double longer = levin_u(terms, kLong);
    if (std::fabs(shorter - longer) > 1e-6) {
        throw DivergenceError("v_coeff: extrapolated partial sums disagree");
    }
    return lead * shorter;
}

double c_coeff(int m, int j, double s) {
    if (m < 0 || j < 0) throw DomainError("c_coeff: m and j must be nonnegative");
    if (!(std::isfinite(s) && s > 0.0)) throw DomainError("c_coeff: s must be positive");
    std::vector<long double> c(m + 1);
    c[0] = std::pow(static_cast<long double>(s), j);
    long double fact = 1.0L;
    std::vector<long double> base(m + 1);
    for (int r = 0; r <= m; ++r) {
        if (r > 0) fact *= r;
        base[r] = ((r % 2) ? -1.0L : 1.0L) / ((1.0L / s + r) * fact);
    }
    for (int q = 1; q <= m; ++q) {
        long double acc = 0.0L;
        for (int r = 1; r <= q; ++r) acc += (static_cast<long double>(r) * j - q + r) * base[r] * c[q - r];
        c[q] = acc / (q * static_cast<long double>(s));
    }
    return static_cast<double>(c[m]);
}

double j_integral(int i, int k, double s, const SeriesTruncation& trunc) {
    if (i < 0 || k < 0) throw DomainError("j_integral: i and k must be nonnegative");
    if (!(std::isfinite(s) && s > 0.0)) throw DomainError("j_integral: s must be positive");
    trunc.validate();
    const double a = 1.0 / s;
    const double b0 = (i + 1.0) / s;
    const double lga = specfun::ln_gamma(a);
    // J_{i,0} = Γ((i+1)/s) / (2Γ(1/s)) exactly.
    const double j0 = std::exp(specfun::ln_gamma(b0) - lga) / 2.0;
    if (k == 0) return j0;

    // Split point in y = z^s: beyond L the neglected part of Φ^k is about
    // k L^{b0+a-2} e^{-2L} / (8 Γ(a)^2), held well below tol * J.
    const double floor_value = j0 * std::pow(0.5, k);
    double L = 6.0;
    for (; L < 60.0; L += 0.25) {
        const double neglected =
            std::log(k / 8.0) + (b0 + a - 2.0) * std::log(L) - 2.0 * L - 2.0 * lga;
        if (neglected < std::log(1e-3 * trunc.tol * floor_value)) break;
    }

    const Real gamma_a = exp(Real(lga));
    Real body = 0;
    Real choose = 1;
    for (int j = 0; j <= k; ++j) {
        const double b = (i + j + 1.0) / s;
        const Real series = inner_series(j, a, b, L, trunc);
        body += choose * pow(gamma_a, k - j) * series;
        choose = choose * (k - j) / (j + 1);
    }
    body /= pow(2 * gamma_a, k + 1);
    const double tail = std::exp(specfun::ln_upper_inc_gamma(b0, L) - lga) / 2.0;
    return static_cast<double>(body) + tail;
}

SeriesMoment moment_series_checked(int n, const BgnParams& p, const SeriesTruncation& trunc) {
    if (n < 1) throw DomainError("moment_series: n must be at least 1");
    p.validate();
    trunc.validate();
    const bool alpha_int = is_integer(p.alpha);
    const bool beta_int = is_integer(p.beta);

    std::map<std::pair<int, int>, double> j_cache;
    auto J = [&](int i, int k) {
        const auto key = std::make_pair(i, k);
        const auto it = j_cache.find(key);
        if (it != j_cache.end()) return it->second;
        const double v = j_integral(i, k, p.s, trunc);
        j_cache.emplace(key, v);
        return v;
    };

    const int j_top = beta_int ? static_cast<int>(std::round(p.beta)) - 1 : trunc.j_max;
    const double ln_b = specfun::ln_beta(p.alpha, p.beta);

    // Standardized moments E(Z^i), Z ~ BGN(α, β, 0, 1, s).
    std::vector<double> z_moment(n + 1, 0.0);
    z_moment[0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        double total = 0.0;
        for (int j = 0; j <= j_top; ++j) {
            const double outer = (j % 2 ? -1.0 : 1.0) * binom(p.beta - 1.0, j);
            if (outer == 0.0) continue;
            const double power = j + p.alpha - 1.0;
            const int k_top = alpha_int ? static_cast<int>(std::round(power)) : trunc.k_max;
            double inner = 0.0;
            for (int k = 0; k <= k_top; ++k) {
                const double positive = power_weight(power, k, trunc);
                const double negative = ((i + k) % 2 ? -1.0 : 1.0) * binom(power, k);
                const double weight = positive + negative;
                if (weight == 0.0) continue;
                inner += weight * J(i, k);
            }
            total += outer * inner;
        }
        z_moment[i] = total * std::exp(-ln_b);
    }

    double value = 0.0;
    for (int i = 0; i <= n; ++i) {
        value += binom(n, i) * std::pow(p.mu, n - i) * std::pow(p.sigma, i) * z_moment[i];
    }
    return {value, alpha_int && beta_int};
}

double moment_series(int n, const BgnParams& p, const SeriesTruncation& trunc) {
    return moment_series_checked(n, p, trunc).value;
}

double moment_quadrature(int n, const BgnParams& p) {
    if (n < 1) throw DomainError("moment_quadrature: n must be at least 1");
    p.validate();
    namespace bq = boost::math::quadrature;
    auto integrand = [&](double x) {
        const double f = bgn_pdf(x, p);
        return f == 0.0 ? 0.0 : std::pow(x, n) * f;
    };
    const double lo = bgn_quantile(1e-10, p);
    const double hi = bgn_quantile(1.0 - 1e-10, p);
    double total = 0.0;
    double error = 0.0;
    // Split at the location, where the density has a kink for s <= 1.
    const double pieces[] = {lo, std::clamp(p.mu, lo, hi), hi};
    for (int piece = 0; piece < 2; ++piece) {
        if (pieces[piece + 1] <= pieces[piece]) continue;
        double err = 0.0;
        total += bq::gauss_kronrod<double, 61>::integrate(integrand, pieces[piece], pieces[piece + 1], 25, 1e-12,
                                                          &err);
        error += err;
    }
    // Tails beyond the 1e-10 quantiles.
    bq::exp_sinh<double> tail_rule;
    double err = 0.0;
    double l1 = 0.0;
    total += tail_rule.integrate([&](double t) { return integrand(hi + t); }, 0.0,
                                 std::numeric_limits<double>::infinity(), 1e-10, &err, &l1);
    error += err;
    total += tail_rule.integrate([&](double t) { return integrand(lo - t); }, 0.0,
                                 std::numeric_limits<double>::infinity(), 1e-10, &err, &l1);
    error += err;
    if (!std::isfinite(total) || error > 1e-8 * (1.0 + std::fabs(total))) {
        throw QuadratureError("moment_quadrature: error estimate above target");
    }
    return total;
}

}  // namespace bgn
