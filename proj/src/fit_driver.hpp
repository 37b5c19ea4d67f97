#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "bgn/error.hpp"
#include "bgn/mle.hpp"
#include "bgn/optimize.hpp"
#include "parallel.hpp"

namespace bgn::detail {

struct StartOutcome {
    std::vector<double> x;
    double loglik = 0.0;
    bool converged = false;
    int iterations = 0;
    double grad_norm = 0.0;
    int start_index = 0;
};

// Minimizes `objective` from every start and keeps the highest log-likelihood,
// ties going to the lowest start index. `to_loglik` maps an objective value
// back to the log-likelihood of the original data. `refine`, when set, may
// improve each start's result after the ascent.
inline StartOutcome best_of_starts(const Objective& objective, const std::vector<std::vector<double>>& starts,
                                   const FitOptions& opts, const std::function<double(double)>& to_loglik,
                                   const char* what, const std::function<void(MinimizeResult&)>& refine = {}) {
    std::vector<std::optional<StartOutcome>> outcomes(starts.size());
    parallel_for(starts.size(), opts.workers, [&](std::size_t k) {
        MinimizeOptions mo;
        mo.max_iter = opts.max_iter;
        mo.grad_tol = opts.grad_tol;
        if (opts.observer) {
            const int start = static_cast<int>(k);
            mo.observer = [&, start](int it, double value) { opts.observer(start, it, to_loglik(value)); };
        }
        MinimizeResult r;
        try {
            r = minimize_bfgs(objective, starts[k], mo);
        } catch (const DomainError&) {
            return;  // start point outside the finite-likelihood region
        }
        if (refine) refine(r);
        outcomes[k] = StartOutcome{r.x, to_loglik(r.value), r.converged, r.iterations, r.grad_norm,
                                   static_cast<int>(k)};
    });
    std::optional<StartOutcome> best;
    for (auto& o : outcomes)
        if (o && (!best || o->loglik > best->loglik)) best = std::move(o);
    if (!best) throw ConvergenceError(std::string(what) + ": no start point has a finite likelihood");
    return *best;
}

}  // namespace bgn::detail
