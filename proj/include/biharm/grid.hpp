#pragma once

#include <Eigen/Core>

#include "biharm/geometry.hpp"

namespace biharm {

/// Boundary data for the discretized profile.  Clamped prescribes value
/// and slope at both endpoints, the four conditions a fourth-order
/// problem needs; periodic identifies the ends.
struct BoundaryConditions {
    enum class Kind { periodic, clamped };
    Kind kind = Kind::periodic;
    // per-component clamped data (empty for periodic)
    Eigen::VectorXd value_a, value_b, slope_a, slope_b;

    static BoundaryConditions periodic();
    static BoundaryConditions clamped(double value_a, double value_b,
                                      double slope_a, double slope_b);
    static BoundaryConditions clamped(Eigen::VectorXd value_a, Eigen::VectorXd value_b,
                                      Eigen::VectorXd slope_a, Eigen::VectorXd slope_b);

    bool is_periodic() const { return kind == Kind::periodic; }
    int dim() const { return is_periodic() ? 0 : static_cast<int>(value_a.size()); }
};

/// Uniform grid over [a, b].  Periodic grids identify node n with node 0,
/// so h = (b-a)/n; clamped grids include both endpoints, h = (b-a)/(n-1).
struct Grid {
    double a = 0.0, b = 1.0;
    int n = 8;
    BoundaryConditions bc;

    Grid() = default;
    Grid(double a, double b, int n, BoundaryConditions bc);

    bool periodic() const { return bc.is_periodic(); }
    double h() const { return periodic() ? (b - a) / n : (b - a) / (n - 1); }
    double node(int i) const { return a + h() * i; }
    Eigen::VectorXd nodes() const;
};

/// Grid samples of the profile; the unknown of the solver.
struct DiscreteFunction {
    Grid grid;
    Eigen::MatrixXd values;  // n x D

    DiscreteFunction() = default;
    DiscreteFunction(Grid g, Eigen::MatrixXd vals);

    int n() const { return grid.n; }
    int dim() const { return static_cast<int>(values.cols()); }

    static DiscreteFunction constant(const Grid& g, double value);
    /// base + amplitude * cos(mode * t) sampled on the grid (D = 1).
    static DiscreteFunction fourier(const Grid& g, double base, double amplitude, int mode);
    /// Linear interpolant of the clamped boundary values (D = 1).
    static DiscreteFunction linear(const Grid& g);
};

/// Checks that the function is compatible with the geometry: domain and
/// periodicity match, clamped boundary rows equal the prescribed values
/// exactly.  Throws DomainError otherwise.
void require_compatible(const GeometrySpec& geom, const DiscreteFunction& df);

} // namespace biharm
