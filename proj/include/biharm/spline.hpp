#pragma once

#include <array>
#include <vector>

#include "biharm/curve.hpp"
#include "biharm/grid.hpp"

namespace biharm {

/// Quintic Hermite spline through the samples of a discrete profile
/// (D = 1): nodal first and second derivatives are estimated with
/// fourth-order stencils (clamped endpoints use the prescribed slopes),
/// and each interval carries the quintic matching value, slope and
/// curvature at both ends.  Jets of the spline itself are exact, which is
/// what the residual cross-check needs.
class QuinticSplineCurve : public SmoothCurve {
public:
    explicit QuinticSplineCurve(const DiscreteFunction& df);

    Jet4 jet(double t) const override;

    double a() const { return a_; }
    double b() const { return b_; }

private:
    double a_ = 0.0, b_ = 0.0, h_ = 0.0;
    bool periodic_ = false;
    int n_intervals_ = 0;
    // per-interval monomial coefficients in the local variable s = (t - t_i)/h
    std::vector<std::array<double, 6>> coef_;
};

} // namespace biharm
