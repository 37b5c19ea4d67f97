#include "bgn/rivals.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "bgn/error.hpp"
#include "bgn/optimize.hpp"
#include "bgn/random.hpp"
#include "bgn/specfun.hpp"
#include "bgn/stats.hpp"
#include "fit_driver.hpp"

namespace bgn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogBound = 30.0;
constexpr std::size_t kMinFitSize = 10;

void check_positive_param(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive and finite");
}

void check_x(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("intensity must be positive and finite");
}

void check_data(std::span<const double> data) {
    if (data.empty()) throw EmptyRegionError("log-likelihood of an empty sample");
    for (double x : data) check_x(x);
}

template <class Params, class LogPdf>
double sum_log_pdf(std::span<const double> data, const Params& p, LogPdf log_pdf) {
    check_data(data);
    p.validate();
    double total = 0.0;
    for (double x : data) total += log_pdf(x, p);
    return std::isnan(total) ? -kInf : total;
}

// Data divided by its mean, with the log-Jacobian needed to map back.
struct Normalized {
    std::vector<double> values;
    double scale;
    double ln_jacobian;
    double cv2;
};

Normalized normalize(std::span<const double> data, const char* what) {
    if (data.size() < kMinFitSize) throw DomainError(std::string(what) + ": need at least 10 observations");
    check_data(data);
    const double m = stats::mean(data);
    const double sd = stats::sample_sd(data);
    if (!(sd > 0.0)) throw DomainError(std::string(what) + ": degenerate data: zero spread");
    Normalized out{{}, m, static_cast<double>(data.size()) * std::log(m), (sd / m) * (sd / m)};
    out.values.reserve(data.size());
    for (double x : data) out.values.push_back(x / m);
    return out;
}

// Starting points in log coordinates: the moment start, then log-uniform
// jitter within a factor of 4 on the coordinates flagged in `jitter`.
std::vector<std::vector<double>> jittered_starts(const std::vector<double>& base, const std::vector<bool>& jitter,
                                                 const FitOptions& opts, std::uint64_t tag) {
    std::vector<std::vector<double>> starts{base};
    const double span = std::log(4.0);
    for (int k = 1; k < opts.n_starts; ++k) {
        RandomStream rng(opts.seed, {tag, static_cast<std::uint64_t>(k)});
        auto u = base;
        for (std::size_t i = 0; i < u.size(); ++i)
            if (jitter[i]) u[i] += span * (2.0 * rng.uniform() - 1.0);
        starts.push_back(std::move(u));
    }
    return starts;
}

// Mean negative log-likelihood objective over log coordinates, with a
// central-difference gradient.
template <class Params, class FromLog, class LogPdf>
Objective numeric_objective(const std::vector<double>& values, FromLog from_log, LogPdf log_pdf) {
    auto value = [&values, from_log, log_pdf](const std::vector<double>& u) {
        for (double c : u)
            if (!(std::fabs(c) <= kLogBound)) return kInf;
        const Params p = from_log(u);
        double total = 0.0;
        try {
            for (double x : values) total += log_pdf(x, p);
        } catch (const Error&) {
            return kInf;
        }
        if (!std::isfinite(total)) return kInf;
        return -total / static_cast<double>(values.size());
    };
    return [value](const std::vector<double>& u, std::vector<double>* grad) {
        const double f = value(u);
        if (grad && std::isfinite(f)) {
            *grad = numeric_gradient(value, u, 1e-5);
            for (double g : *grad)
                if (!std::isfinite(g)) return kInf;
        }
        return f;
    };
}

template <class Params, class FromLog, class LogPdf, class Rescale>
Fit<Params> fit_positive(std::span<const double> data, const FitOptions& opts, const char* what,
                         std::vector<double> base, std::vector<bool> jitter, std::uint64_t tag, FromLog from_log,
                         LogPdf log_pdf, Rescale rescale) {
    opts.validate();
    const Normalized norm = normalize(data, what);
    const Objective objective = numeric_objective<Params>(norm.values, from_log, log_pdf);
    const double n = static_cast<double>(norm.values.size());
    const auto starts = jittered_starts(base, jitter, opts, tag);
    const auto best = detail::best_of_starts(
        objective, starts, opts, [&](double v) { return -n * v - norm.ln_jacobian; }, what);
    return {rescale(from_log(best.x), norm.scale), best.loglik, best.converged, best.iterations, best.grad_norm,
            best.start_index};
}

}  // namespace

void GammaParams::validate() const {
    check_positive_param(shape, "gamma shape");
    check_positive_param(rate, "gamma rate");
}

void KParams::validate() const {
    check_positive_param(alpha_k, "K alpha");
    check_positive_param(looks, "K looks");
    check_positive_param(mean_intensity, "K mean intensity");
}

void G0Params::validate() const {
    if (!(alpha_g < 0.0) || !std::isfinite(alpha_g)) throw DomainError("G0 alpha must be negative and finite");
    check_positive_param(gamma_g, "G0 gamma");
    check_positive_param(looks, "G0 looks");
}

double gamma_log_pdf(double x, const GammaParams& p) {
    check_x(x);
    p.validate();
    return p.shape * std::log(p.rate) + (p.shape - 1.0) * std::log(x) - p.rate * x - specfun::ln_gamma(p.shape);
}

double gamma_pdf(double x, const GammaParams& p) { return std::exp(gamma_log_pdf(x, p)); }

double k_log_pdf(double x, const KParams& p) {
    check_x(x);
    p.validate();
    const double a = p.alpha_k;
    const double l = p.looks;
    const double ln_ratio = std::log(a * l / p.mean_intensity);
    const double arg = 2.0 * std::sqrt(a * l * x / p.mean_intensity);
    return std::numbers::ln2 - specfun::ln_gamma(a) - specfun::ln_gamma(l) + 0.5 * (a + l) * ln_ratio +
           (0.5 * (a + l) - 1.0) * std::log(x) + specfun::ln_bessel_k(a - l, arg);
}

double k_pdf(double x, const KParams& p) { return std::exp(k_log_pdf(x, p)); }

double g0_log_pdf(double x, const G0Params& p) {
    check_x(x);
    p.validate();
    const double a = p.alpha_g;
    const double l = p.looks;
    const double g = p.gamma_g;
    return l * std::log(l) + specfun::ln_gamma(l - a) + (l - 1.0) * std::log(x) - a * std::log(g) -
           specfun::ln_gamma(l) - specfun::ln_gamma(-a) - (l - a) * std::log(g + l * x);
}

double g0_pdf(double x, const G0Params& p) { return std::exp(g0_log_pdf(x, p)); }

double gamma_loglik(std::span<const double> data, const GammaParams& p) {
    return sum_log_pdf(data, p, [](double x, const GammaParams& q) { return gamma_log_pdf(x, q); });
}

double k_loglik(std::span<const double> data, const KParams& p) {
    return sum_log_pdf(data, p, [](double x, const KParams& q) { return k_log_pdf(x, q); });
}

double g0_loglik(std::span<const double> data, const G0Params& p) {
    return sum_log_pdf(data, p, [](double x, const G0Params& q) { return g0_log_pdf(x, q); });
}

GammaFit fit_gamma(std::span<const double> data, const FitOptions& opts) {
    const double cv2 = normalize(data, "fit_gamma").cv2;
    const double shape0 = 1.0 / cv2;
    // Normalized data have mean 1, so the moment start has rate = shape.
    return fit_positive<GammaParams>(
        data, opts, "fit_gamma", {std::log(shape0), std::log(shape0)}, {true, false}, 0x47414D4DULL,
        [](const std::vector<double>& u) { return GammaParams{std::exp(u[0]), std::exp(u[1])}; },
        [](double x, const GammaParams& p) {
            return p.shape * std::log(p.rate) + (p.shape - 1.0) * std::log(x) - p.rate * x -
                   specfun::ln_gamma(p.shape);
        },
        [](GammaParams p, double scale) {
            p.rate /= scale;
            return p;
        });
}

KFit fit_k(std::span<const double> data, const FitOptions& opts) {
    const double cv2 = normalize(data, "fit_k").cv2;
    // Squared CV of the K law is 1/alpha + 1/L + 1/(alpha L); start with L
    // carrying half of it.
    const double looks0 = 2.0 / cv2;
    const double alpha0 = (1.0 + 1.0 / looks0) / (0.5 * cv2);
    return fit_positive<KParams>(
        data, opts, "fit_k", {std::log(alpha0), std::log(looks0), 0.0}, {true, true, false}, 0x4B4B4B4BULL,
        [](const std::vector<double>& u) { return KParams{std::exp(u[0]), std::exp(u[1]), std::exp(u[2])}; },
        [](double x, const KParams& p) { return k_log_pdf(x, p); },
        [](KParams p, double scale) {
            p.mean_intensity *= scale;
            return p;
        });
}

G0Fit fit_g0(std::span<const double> data, const FitOptions& opts) {
    const double cv2 = normalize(data, "fit_g0").cv2;
    // With L = 2/cv2 the texture must supply the rest of the squared CV:
    // (1 + 1/L) (a - 1)/(a - 2) = 1 + cv2 for a = -alpha.
    const double looks0 = 2.0 / cv2;
    const double r = (1.0 + cv2) / (1.0 + 1.0 / looks0);
    const double a0 = (2.0 * r - 1.0) / (r - 1.0);
    const double gamma0 = a0 - 1.0;
    return fit_positive<G0Params>(
        data, opts, "fit_g0", {std::log(a0), std::log(gamma0), std::log(looks0)}, {true, false, true}, 0x47303030ULL,
        [](const std::vector<double>& u) { return G0Params{-std::exp(u[0]), std::exp(u[1]), std::exp(u[2])}; },
        [](double x, const G0Params& p) { return g0_log_pdf(x, p); },
        [](G0Params p, double scale) {
            p.gamma_g *= scale;
            return p;
        });
}

CriteriaTriple criteria(double loglik, int k_params, long long n) {
    if (k_params < 1) throw InvalidArgument("criteria: k must be positive");
    if (n < 1) throw InvalidArgument("criteria: n must be positive");
    const double k = static_cast<double>(k_params);
    CriteriaTriple out;
    out.aic = 2.0 * k - 2.0 * loglik;
    if (n > k_params + 1) out.aicc = out.aic + 2.0 * k * (k + 1.0) / (static_cast<double>(n) - k - 1.0);
    out.bic = k * std::log(static_cast<double>(n)) - 2.0 * loglik;
    return out;
}

}  // namespace bgn
