#pragma once

#include <functional>
#include <vector>

namespace bgn {

/// Objective for minimize_bfgs. Returns the value at x and, when grad is not
/// null, writes the gradient there. Infeasible points return +infinity.
using Objective = std::function<double(const std::vector<double>& x, std::vector<double>* grad)>;

struct MinimizeOptions {
    int max_iter = 500;
    /// Converged when the largest gradient component is at most this.
    double grad_tol = 1e-6;
    /// Cap on the largest component of a single step.
    double max_step = 2.0;
    /// Called after every accepted step with the iteration count and value.
    std::function<void(int, double)> observer;
};

struct MinimizeResult {
    std::vector<double> x;
    double value = 0.0;
    std::vector<double> grad;
    bool converged = false;
    int iterations = 0;
    double grad_norm = 0.0;
};

/// Quasi-Newton minimization with BFGS updates of the inverse Hessian and a
/// backtracking Armijo line search. Every accepted step lowers the value.
/// Stops unconverged when ten consecutive steps gain nothing measurable.
MinimizeResult minimize_bfgs(const Objective& f, std::vector<double> x0, const MinimizeOptions& opts = {});

/// Central-difference gradient with relative step h.
std::vector<double> numeric_gradient(const std::function<double(const std::vector<double>&)>& f,
                                     const std::vector<double>& x, double h = 1e-6);

}  // namespace bgn
