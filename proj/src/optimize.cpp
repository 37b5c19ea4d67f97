#include "bgn/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bgn/error.hpp"

namespace bgn {

namespace {

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

using Matrix = std::vector<std::vector<double>>;

Matrix identity(std::size_t n) {
    Matrix m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
    return m;
}

// Shrink factor for a rejected step: the minimizer of the quadratic through
// f(0), f'(0) and f(step), kept within [0.1, 0.5].
double next_step_fraction(double f0, double slope, double step, double f_step) {
    if (!std::isfinite(f_step)) return 0.5;
    const double curvature = f_step - f0 - slope * step;
    if (!(curvature > 0.0)) return 0.5;
    const double t = -slope * step / (2.0 * curvature);
    return std::clamp(t, 0.1, 0.5);
}

std::vector<double> descent_direction(const Matrix& h, const std::vector<double>& g) {
    std::vector<double> d(g.size(), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) d[i] -= h[i][j] * g[j];
    return d;
}

}  // namespace

MinimizeResult minimize_bfgs(const Objective& f, std::vector<double> x0, const MinimizeOptions& opts) {
    if (opts.max_iter < 1) throw InvalidArgument("minimize_bfgs: max_iter must be positive");
    if (!(opts.grad_tol > 0.0)) throw InvalidArgument("minimize_bfgs: grad_tol must be positive");
    const std::size_t n = x0.size();
    MinimizeResult r;
    r.x = std::move(x0);
    r.grad.assign(n, 0.0);
    r.value = f(r.x, &r.grad);
    if (!std::isfinite(r.value)) throw DomainError("minimize_bfgs: objective is not finite at the start");
    Matrix h = identity(n);
    constexpr double kArmijo = 1e-4;
    constexpr int kMaxBacktracks = 50;
    constexpr int kStallLimit = 10;
    int stalled = 0;

    for (r.iterations = 0; r.iterations < opts.max_iter; ++r.iterations) {
        r.grad_norm = inf_norm(r.grad);
        if (r.grad_norm <= opts.grad_tol) {
            r.converged = true;
            return r;
        }
        bool accepted = false;
        std::vector<double> x_new(n), g_new(n, 0.0);
        double f_new = 0.0;
        for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
            if (attempt == 1) h = identity(n);
            std::vector<double> d = descent_direction(h, r.grad);
            double slope = dot(d, r.grad);
            if (!(slope < 0.0)) {
                h = identity(n);
                d = descent_direction(h, r.grad);
                slope = dot(d, r.grad);
            }
            double step = std::min(1.0, opts.max_step / std::max(inf_norm(d), 1e-300));
            for (int back = 0; back < kMaxBacktracks; ++back) {
                for (std::size_t i = 0; i < n; ++i) x_new[i] = r.x[i] + step * d[i];
                f_new = f(x_new, nullptr);
                if (!(std::isfinite(f_new) && f_new <= r.value + kArmijo * step * slope)) {
                    step *= next_step_fraction(r.value, slope, step, f_new);
                    continue;
                }
                // The gradient can be undefined where the value is not.
                f_new = f(x_new, &g_new);
                if (std::isfinite(f_new) && std::isfinite(inf_norm(g_new))) {
                    accepted = true;
                    break;
                }
            }
        }
        if (!accepted) break;
        const double gain = r.value - f_new;
        stalled = gain <= 1e-15 * std::max(1.0, std::fabs(r.value)) ? stalled + 1 : 0;

        std::vector<double> s(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = x_new[i] - r.x[i];
            y[i] = g_new[i] - r.grad[i];
        }
        const double sy = dot(s, y);
        if (sy > 1e-12 * std::sqrt(dot(s, s) * dot(y, y))) {
            // H <- (I - ρ s yᵀ) H (I - ρ y sᵀ) + ρ s sᵀ
            const double rho = 1.0 / sy;
            std::vector<double> hy(n, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) hy[i] += h[i][j] * y[j];
            const double yhy = dot(y, hy);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    h[i][j] += rho * ((1.0 + rho * yhy) * s[i] * s[j] - hy[i] * s[j] - s[i] * hy[j]);
        }
        r.x = x_new;
        r.value = f_new;
        r.grad = g_new;
        if (opts.observer) opts.observer(r.iterations + 1, r.value);
        if (stalled >= kStallLimit) {
            ++r.iterations;
            break;
        }
    }
    r.grad_norm = inf_norm(r.grad);
    r.converged = r.grad_norm <= opts.grad_tol;
    return r;
}

std::vector<double> numeric_gradient(const std::function<double(const std::vector<double>&)>& f,
                                     const std::vector<double>& x, double h) {
    std::vector<double> g(x.size());
    std::vector<double> probe = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double step = h * std::max(1.0, std::fabs(x[i]));
        probe[i] = x[i] + step;
        const double up = f(probe);
        probe[i] = x[i] - step;
        const double down = f(probe);
        probe[i] = x[i];
        g[i] = (up - down) / (2.0 * step);
    }
    return g;
}

}  // namespace bgn
