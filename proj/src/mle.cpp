#include "bgn/mle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "bgn/error.hpp"
#include "bgn/optimize.hpp"
#include "bgn/random.hpp"
#include "bgn/specfun.hpp"
#include "bgn/stats.hpp"
#include "fit_driver.hpp"

namespace bgn {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kMinFitSize = 10;
// Box on the unconstrained coordinates (ln s, mu, ln sigma, ln alpha, ln beta)
// of the standardized problem. Past these limits the likelihood terms cancel
// catastrophically and the ascent chases rounding noise.
constexpr std::array<double, 5> kUpperBound{4.0, 1e6, 30.0, 12.0, 12.0};

// Per-parameter constants shared by every observation.
struct Kernel {
    BgnParams p;
    double a, lga, psi_a, ln_sigma, ln_beta_fn, ln_half_s, psi_ab, psi_alpha, psi_beta;
    specfun::Accuracy acc;

    explicit Kernel(const BgnParams& params) : p(params) {
        p.validate();
        a = 1.0 / p.s;
        lga = specfun::ln_gamma(a);
        psi_a = specfun::digamma(a);
        ln_sigma = std::log(p.sigma);
        ln_beta_fn = specfun::ln_beta(p.alpha, p.beta);
        ln_half_s = std::log(p.s / 2.0);
        psi_ab = specfun::digamma(p.alpha + p.beta);
        psi_alpha = specfun::digamma(p.alpha);
        psi_beta = specfun::digamma(p.beta);
    }

    // Adds one observation; returns its log-density and accumulates the score.
    // With location_free, a datum at mu with s < 1 contributes no mu score
    // instead of raising; callers then ignore the mu component.
    double add(double x, Score* g, bool location_free = false) const {
        const double s = p.s;
        const double z = (x - p.mu) / p.sigma;
        const double w = std::fabs(z);
        const double ln_w = w == 0.0 ? kNegInf : std::log(w);
        const double y = w == 0.0 ? 0.0 : std::exp(s * ln_w);
        const double q = specfun::gamma_q(a, y);
        double ln_tail;
        if (q > 1e-280) {
            ln_tail = std::log(q) - std::numbers::ln2;
        } else {
            const auto sh = specfun::detail::shifted_tail(a, y);
            ln_tail = (a - 1.0) * std::log(y) - y + std::log(sh.g0) - lga - std::numbers::ln2;
        }
        const double tail = std::exp(ln_tail);
        const double ln_rest = std::log1p(-tail);
        const bool lower = z <= 0.0;
        const double ln_cdf = lower ? ln_tail : ln_rest;
        const double ln_ccdf = lower ? ln_rest : ln_tail;
        const double ln_phi = ln_half_s - lga - y;
        double term = ln_phi - ln_sigma - ln_beta_fn;
        if (p.alpha != 1.0) term += (p.alpha - 1.0) * ln_cdf;
        if (p.beta != 1.0) term += (p.beta - 1.0) * ln_ccdf;
        if (!g) return term;

        const double am1 = p.alpha - 1.0;
        const double bm1 = p.beta - 1.0;
        const double phi_over_cdf = std::exp(ln_phi - ln_cdf);
        const double phi_over_ccdf = std::exp(ln_phi - ln_ccdf);
        const double sign = z > 0.0 ? 1.0 : (z < 0.0 ? -1.0 : 0.0);
        double w_pow_sm1;
        if (w == 0.0) {
            if (s < 1.0 && !location_free) throw DomainError("score: datum at mu with s < 1");
            w_pow_sm1 = s <= 1.0 ? 1.0 : 0.0;
        } else {
            w_pow_sm1 = std::exp((s - 1.0) * ln_w);
        }
        // d ln(tail)/ds, where tail = Γ(1/s, w^s) / (2 Γ(1/s)).
        const double d_ln_tail =
            specfun::detail::dlog_gamma_ds_prepared(s, w, ln_w, y, q, lga, psi_a, acc) + psi_a / (s * s);
        const double odds = tail / (1.0 - tail);
        const double d_ln_cdf = lower ? d_ln_tail : -odds * d_ln_tail;
        const double d_ln_ccdf = lower ? -odds * d_ln_tail : d_ln_tail;
        const double y_ln_w = w == 0.0 ? 0.0 : y * ln_w;

        (*g)[0] += 1.0 / s + psi_a / (s * s) - y_ln_w + am1 * d_ln_cdf + bm1 * d_ln_ccdf;
        (*g)[1] += (-am1 * phi_over_cdf + bm1 * phi_over_ccdf + s * w_pow_sm1 * sign) / p.sigma;
        (*g)[2] += (-1.0 - am1 * z * phi_over_cdf + bm1 * z * phi_over_ccdf + s * y) / p.sigma;
        (*g)[3] += psi_ab - psi_alpha + ln_cdf;
        (*g)[4] += psi_ab - psi_beta + ln_ccdf;
        return term;
    }
};

void require_data(std::span<const double> data) {
    if (data.empty()) throw EmptyRegionError("log-likelihood of an empty sample");
    for (double x : data)
        if (!std::isfinite(x)) throw DomainError("data must be finite");
}

}  // namespace

void FitOptions::validate() const {
    if (max_iter < 1) throw InvalidArgument("FitOptions.max_iter must be positive");
    if (!(grad_tol > 0.0)) throw InvalidArgument("FitOptions.grad_tol must be positive");
    if (n_starts < 1) throw InvalidArgument("FitOptions.n_starts must be at least 1");
    if (workers < 0) throw InvalidArgument("FitOptions.workers must be nonnegative");
}

namespace {

double accumulate(std::span<const double> data, const BgnParams& p, Score* out, bool location_free) {
    require_data(data);
    const Kernel kernel(p);
    if (out) out->fill(0.0);
    double total = 0.0;
    for (double x : data) {
        const double t = kernel.add(x, out, location_free);
        if (std::isnan(t) || t == kNegInf) return kNegInf;
        total += t;
    }
    return total;
}

}  // namespace

double loglik_and_score(std::span<const double> data, const BgnParams& p, Score* out) {
    return accumulate(data, p, out, false);
}

double loglik(std::span<const double> data, const BgnParams& p) { return loglik_and_score(data, p, nullptr); }

Score score(std::span<const double> data, const BgnParams& p) {
    Score g{};
    loglik_and_score(data, p, &g);
    return g;
}

Unconstrained to_unconstrained(const BgnParams& p) {
    p.validate();
    return {std::log(p.s), p.mu, std::log(p.sigma), std::log(p.alpha), std::log(p.beta)};
}

BgnParams from_unconstrained(const Unconstrained& u) {
    return {std::exp(u[3]), std::exp(u[4]), u[1], std::exp(u[2]), std::exp(u[0])};
}

Unconstrained unconstrained_gradient(const Score& raw, const BgnParams& p) {
    return {raw[0] * p.s, raw[1], raw[2] * p.sigma, raw[3] * p.alpha, raw[4] * p.beta};
}

DataScale data_scale(std::span<const double> data) {
    require_data(data);
    const double center = stats::median(data);
    double scale = 0.5 * (stats::quantile(data, 0.75) - stats::quantile(data, 0.25));
    if (!(scale > 0.0) && data.size() > 1) scale = stats::sample_sd(data);
    if (!(scale > 0.0)) throw DomainError("degenerate data: zero spread");
    return {center, scale};
}

BgnParams init_params(std::span<const double> data) {
    if (data.size() < kMinFitSize) throw DomainError("init_params: need at least 10 observations");
    const DataScale ds = data_scale(data);
    return {1.0, 1.0, ds.center, ds.scale, 2.0};
}

std::vector<BgnParams> start_set(std::span<const double> data, int n_starts, std::uint64_t seed) {
    if (n_starts < 1) throw InvalidArgument("start_set: n_starts must be at least 1");
    const BgnParams base = init_params(data);
    std::vector<BgnParams> starts{base};
    const double span = std::log(4.0);
    for (int k = 1; k < n_starts; ++k) {
        RandomStream rng(seed, {0x5354415254ULL, static_cast<std::uint64_t>(k)});
        auto factor = [&] { return std::exp(span * (2.0 * rng.uniform() - 1.0)); };
        BgnParams p = base;
        p.alpha *= factor();
        p.beta *= factor();
        p.s *= factor();
        starts.push_back(p);
    }
    return starts;
}

FitResult fit_bgn(std::span<const double> data, const FitOptions& opts) {
    opts.validate();
    if (data.size() < kMinFitSize) throw DomainError("fit_bgn: need at least 10 observations");
    require_data(data);
    const DataScale ds = data_scale(data);
    std::vector<double> standardized(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) standardized[i] = (data[i] - ds.center) / ds.scale;
    const double n = static_cast<double>(data.size());
    const double ln_scale_total = n * std::log(ds.scale);

    // Minimize -ℓ/n over (ln s, mu, ln sigma, ln alpha, ln beta) on the standardized data.
    const Objective objective = [&](const std::vector<double>& x, std::vector<double>* grad) {
        for (int i = 0; i < 5; ++i)
            if (!(std::fabs(x[i]) <= kUpperBound[i])) return std::numeric_limits<double>::infinity();
        const BgnParams p = from_unconstrained({x[0], x[1], x[2], x[3], x[4]});
        Score raw{};
        double ll;
        try {
            ll = loglik_and_score(standardized, p, grad ? &raw : nullptr);
        } catch (const Error&) {
            return std::numeric_limits<double>::infinity();
        }
        if (!std::isfinite(ll)) return std::numeric_limits<double>::infinity();
        if (grad) {
            const auto u = unconstrained_gradient(raw, p);
            grad->assign(5, 0.0);
            for (int i = 0; i < 5; ++i) {
                (*grad)[i] = -u[i] / n;
                if (!std::isfinite((*grad)[i])) return std::numeric_limits<double>::infinity();
            }
        }
        return -ll / n;
    };

    // For s < 1 every datum is a cusp of the likelihood in mu, so the ascent
    // stalls next to one with a large mu gradient. There the maximum over mu
    // sits on a datum; refit the other four coordinates with mu pinned to the
    // nearest data and keep the best. The reported gradient then covers the
    // four coordinates in which the likelihood is differentiable.
    std::vector<double> sorted = standardized;
    std::sort(sorted.begin(), sorted.end());
    const auto pin_to_cusp = [&](MinimizeResult& r) {
        if (r.converged || !(r.x[0] < 0.0)) return;
        constexpr std::ptrdiff_t kNeighbours = 1;
        const double mu = r.x[1];
        const auto at = std::lower_bound(sorted.begin(), sorted.end(), mu) - sorted.begin();
        const auto lo = std::max<std::ptrdiff_t>(0, at - kNeighbours);
        const auto hi = std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(sorted.size()), at + kNeighbours);
        std::optional<MinimizeResult> best;
        double best_mu = mu;
        for (auto i = lo; i < hi; ++i) {
            const double pinned = sorted[i];
            const Objective profile = [&](const std::vector<double>& x, std::vector<double>* grad) {
                constexpr double kInf = std::numeric_limits<double>::infinity();
                if (!(x[0] < 0.0)) return kInf;  // the cusp argument needs s < 1
                const std::vector<double> full{x[0], pinned, x[1], x[2], x[3]};
                for (int k = 0; k < 5; ++k)
                    if (!(std::fabs(full[k]) <= kUpperBound[k])) return kInf;
                const BgnParams p = from_unconstrained({full[0], full[1], full[2], full[3], full[4]});
                Score raw{};
                double ll;
                try {
                    ll = accumulate(standardized, p, grad ? &raw : nullptr, true);
                } catch (const Error&) {
                    return kInf;
                }
                if (!std::isfinite(ll)) return kInf;
                if (grad) {
                    const auto u = unconstrained_gradient(raw, p);
                    *grad = {-u[0] / n, -u[2] / n, -u[3] / n, -u[4] / n};
                    for (double g : *grad)
                        if (!std::isfinite(g)) return kInf;
                }
                return -ll / n;
            };
            MinimizeOptions mo;
            mo.max_iter = opts.max_iter;
            mo.grad_tol = opts.grad_tol;
            try {
                auto pr = minimize_bfgs(profile, {r.x[0], r.x[2], r.x[3], r.x[4]}, mo);
                if (!best || pr.value < best->value) {
                    best = std::move(pr);
                    best_mu = pinned;
                }
            } catch (const DomainError&) {
            }
        }
        if (!best || best->value > r.value) return;
        r.x = {best->x[0], best_mu, best->x[1], best->x[2], best->x[3]};
        r.value = best->value;
        r.grad = {best->grad[0], 0.0, best->grad[1], best->grad[2], best->grad[3]};
        r.grad_norm = best->grad_norm;
        r.converged = best->converged;
        r.iterations += best->iterations;
    };

    std::vector<std::vector<double>> starts;
    for (BgnParams sp : start_set(data, opts.n_starts, opts.seed)) {
        sp.mu = (sp.mu - ds.center) / ds.scale;
        sp.sigma /= ds.scale;
        const auto u0 = to_unconstrained(sp);
        starts.emplace_back(u0.begin(), u0.end());
    }
    const auto best = detail::best_of_starts(
        objective, starts, opts, [&](double value) { return -n * value - ln_scale_total; }, "fit_bgn",
        pin_to_cusp);
    BgnParams p = from_unconstrained({best.x[0], best.x[1], best.x[2], best.x[3], best.x[4]});
    p.mu = ds.center + ds.scale * p.mu;
    p.sigma *= ds.scale;
    return {p, best.loglik, best.converged, best.iterations, best.grad_norm, best.start_index};
}

}  // namespace bgn
