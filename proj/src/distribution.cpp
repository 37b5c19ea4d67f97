#include "bgn/distribution.hpp"

#include <cfloat>
#include <cmath>
#include <limits>

#include "bgn/error.hpp"
#include "bgn/random.hpp"
#include "bgn/specfun.hpp"

namespace bgn {

void BgnParams::validate() const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(alpha)) throw DomainError("BgnParams: alpha must be positive");
    if (!positive(beta)) throw DomainError("BgnParams: beta must be positive");
    if (!std::isfinite(mu)) throw DomainError("BgnParams: mu must be finite");
    if (!positive(sigma)) throw DomainError("BgnParams: sigma must be positive");
    if (!positive(s)) throw DomainError("BgnParams: s must be positive");
}

double bgn_log_pdf(double x, const BgnParams& p) {
    p.validate();
    if (std::isnan(x)) throw DomainError("bgn_pdf: x is NaN");
    if (std::isinf(x)) return -std::numeric_limits<double>::infinity();
    const double z = (x - p.mu) / p.sigma;
    const double ln_small = gn_log_tail_std(z, p.s);
    const double ln_large = std::log1p(-std::exp(ln_small));
    const double ln_lower = z <= 0.0 ? ln_small : ln_large;
    const double ln_upper = z <= 0.0 ? ln_large : ln_small;
    double v = gn_log_pdf_std(z, p.s) - std::log(p.sigma) - specfun::ln_beta(p.alpha, p.beta);
    if (p.alpha != 1.0) v += (p.alpha - 1.0) * ln_lower;
    if (p.beta != 1.0) v += (p.beta - 1.0) * ln_upper;
    if (std::isnan(v)) return std::numeric_limits<double>::infinity();
    return v;
}

double bgn_pdf(double x, const BgnParams& p) { return std::exp(bgn_log_pdf(x, p)); }

double bgn_cdf(double x, const BgnParams& p) {
    p.validate();
    if (std::isnan(x)) throw DomainError("bgn_cdf: x is NaN");
    const double z = (x - p.mu) / p.sigma;
    const TailPair t = gn_tails_std(z, p.s);
    if (z <= 0.0) return specfun::reg_inc_beta(t.lower, p.alpha, p.beta);
    // I_y(a, b) = 1 - I_{1-y}(b, a).
    return specfun::reg_inc_beta_complement(t.upper, p.beta, p.alpha);
}

double bgn_ccdf(double x, const BgnParams& p) {
    p.validate();
    if (std::isnan(x)) throw DomainError("bgn_ccdf: x is NaN");
    const double z = (x - p.mu) / p.sigma;
    const TailPair t = gn_tails_std(z, p.s);
    if (z <= 0.0) return specfun::reg_inc_beta_complement(t.lower, p.alpha, p.beta);
    return specfun::reg_inc_beta(t.upper, p.beta, p.alpha);
}

double bgn_quantile(double prob, const BgnParams& p) {
    p.validate();
    if (!(prob > 0.0 && prob < 1.0)) throw DomainError("bgn_quantile: prob must lie in (0, 1)");
    double y = 0.0;
    double y_comp = 0.0;
    if (prob <= 0.5) {
        y = specfun::reg_inc_beta_inv(prob, p.alpha, p.beta, &y_comp);
    } else {
        y = specfun::reg_inc_beta_inv_upper(1.0 - prob, p.alpha, p.beta, &y_comp);
    }
    y = std::max(y, DBL_MIN);
    y_comp = std::max(y_comp, DBL_MIN);
    return gn_quantile_split(y, y_comp, p.gn());
}

void bgn_sample_into(std::vector<double>& out, std::size_t n, const BgnParams& p, RandomStream& rng) {
    p.validate();
    const GnParams g = p.gn();
    out.reserve(out.size() + n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto u = rng.beta(p.alpha, p.beta);
        out.push_back(gn_quantile_split(u.u, u.one_minus_u, g));
    }
}

SampleBatch bgn_sample(std::size_t n, const BgnParams& p, std::uint64_t seed) {
    if (n == 0) throw DomainError("bgn_sample: n must be at least 1");
    p.validate();
    SampleBatch batch;
    batch.seed = seed;
    batch.params = p;
    RandomStream rng(seed);
    bgn_sample_into(batch.values, n, p, rng);
    return batch;
}

double limiting_beta_pdf(double x, const BgnParams& p) {
    p.validate();
    const double z = (x - p.mu) / p.sigma;
    if (!(z >= -1.0 && z <= 1.0)) return 0.0;
    const double y = 0.5 * (z + 1.0);
    double v = -specfun::ln_beta(p.alpha, p.beta) - std::log(2.0 * p.sigma);
    if (p.alpha != 1.0) v += (p.alpha - 1.0) * std::log(y);
    if (p.beta != 1.0) v += (p.beta - 1.0) * std::log1p(-y);
    return std::exp(v);
}

}  // namespace bgn
