#pragma once

#include <vector>

#include "biharm/curve.hpp"
#include "biharm/euler_lagrange.hpp"

namespace biharm {

struct SolveConfig {
    int max_iter = 100;
    double grad_tol = 1e-10;
    /// Initial step factor in (0, 1]; halved while the gradient norm does
    /// not decrease, down to 2^-20.
    double damping = 1.0;
    /// Levenberg shift added to the Hessian diagonal when the Newton
    /// direction fails to descend for |grad|^2; auto-escalated x10 up to 1e6.
    double regularization = 0.0;

    void validate() const;
};

struct SolveReport {
    DiscreteFunction solution;
    double grad_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    double energy = 0.0;
};

/// Damped Newton iteration on the discrete gradient.  Clamped boundary
/// rows of the initial guess are preserved bit-identically; periodic
/// solutions are periodic by construction.  Non-convergence is reported,
/// not thrown (best iterate returned).
SolveReport solve(const GeometrySpec& geom, const DiscreteFunction& initial,
                  const SolveConfig& cfg);

struct ConvergenceStudy {
    std::vector<int> grids;
    std::vector<double> sup_errors;
    /// observed_orders[i] compares grids[i] and grids[i+1].
    std::vector<double> observed_orders;
    std::vector<SolveReport> reports;
};

/// Manufactured-solution harness: clamps each grid to the exact curve's
/// boundary data, solves from the linear interpolant, and reports
/// sup-errors and observed orders.  The exact curve must satisfy the
/// critical-point equation (residual <= 1e-7, checked).
ConvergenceStudy convergence_study(const GeometrySpec& geom, const SmoothCurve& exact,
                                   const std::vector<int>& grids, const SolveConfig& cfg);

} // namespace biharm
