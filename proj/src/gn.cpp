#include "bgn/gn.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "bgn/error.hpp"
#include "bgn/specfun.hpp"

namespace bgn {

namespace {

void check_shape(double s) {
    if (!(std::isfinite(s) && s > 0.0)) throw DomainError("generalized normal: s must be positive and finite");
}

// |z|^s with |0|^s = 0.
double abs_pow(double z, double s) {
    const double w = std::fabs(z);
    return w == 0.0 ? 0.0 : std::exp(s * std::log(w));
}

}  // namespace

void GnParams::validate() const {
    if (!std::isfinite(mu)) throw DomainError("GnParams: mu must be finite");
    if (!(std::isfinite(sigma) && sigma > 0.0)) throw DomainError("GnParams: sigma must be positive");
    check_shape(s);
}

double gn_log_pdf_std(double z, double s) {
    check_shape(s);
    if (std::isinf(z)) return -std::numeric_limits<double>::infinity();
    return std::log(s / 2.0) - specfun::ln_gamma(1.0 / s) - abs_pow(z, s);
}

double gn_pdf_std(double z, double s) { return std::exp(gn_log_pdf_std(z, s)); }

TailPair gn_tails_std(double z, double s) {
    check_shape(s);
    if (std::isnan(z)) throw DomainError("generalized normal: z is NaN");
    const double tail = 0.5 * specfun::gamma_q(1.0 / s, abs_pow(z, s));
    // z = 0 falls in the lower branch; both give 1/2.
    if (z <= 0.0) return {tail, 1.0 - tail};
    return {1.0 - tail, tail};
}

double gn_log_tail_std(double z, double s) {
    check_shape(s);
    const double a = 1.0 / s;
    return specfun::ln_upper_inc_gamma(a, abs_pow(z, s)) - std::numbers::ln2 - specfun::ln_gamma(a);
}

double gn_cdf_std(double z, double s) { return gn_tails_std(z, s).lower; }

double gn_cdf(double x, const GnParams& p) {
    p.validate();
    return gn_cdf_std((x - p.mu) / p.sigma, p.s);
}

double gn_quantile_split(double u, double one_minus_u, const GnParams& p) {
    p.validate();
    if (!(u > 0.0 && u <= 1.0 && one_minus_u > 0.0 && one_minus_u <= 1.0)) {
        throw DomainError("gn_quantile: u must lie in (0, 1)");
    }
    const bool lower_branch = u <= 0.5;
    const double twice_tail = 2.0 * (lower_branch ? u : one_minus_u);
    const double a = 1.0 / p.s;
    // Q(a, g) = twice_tail; near the median use P = 1 - twice_tail, which is exact there.
    const double g = twice_tail > 0.5 ? specfun::gamma_quantile(1.0 - twice_tail, a)
                                      : specfun::gamma_quantile_upper(twice_tail, a);
    const double r = g == 0.0 ? 0.0 : std::exp(std::log(g) / p.s);
    return lower_branch ? p.mu - p.sigma * r : p.mu + p.sigma * r;
}

double gn_quantile(double u, const GnParams& p) { return gn_quantile_split(u, 1.0 - u, p); }

}  // namespace bgn
