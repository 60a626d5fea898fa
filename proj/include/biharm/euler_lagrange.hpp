#pragma once

#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "biharm/curve.hpp"
#include "biharm/geometry.hpp"
#include "biharm/grid.hpp"

namespace biharm {

/// Default time step for the finite-difference-in-t residual pathway.
double default_fd_step(const GeometrySpec& geom);

/// Residual of the fourth-order critical-point equation along a smooth
/// curve, one entry per profile component:
///
///   R(t) = (1/2) [ L_x - d/dt L_p + d^2/dt^2 L_q ]
///
/// evaluated with exact jets and fourth-order central differences in t
/// (one Richardson level) for the two total derivatives.  Only first
/// partials of L enter.  The 1/2 matches the convention of the expanded
/// equations in expanded_ode_residual, which divide out the factor 2
/// produced by differentiating the squared tension.
Eigen::VectorXd el_residual_along_curve(const GeometrySpec& geom, const SmoothCurve& curve,
                                        double t, double fd_step);

/// Hard-coded expanded forms of the fourth-order equation for the three
/// constant-coefficient / torus cases, used as independent cross-checks
/// of the generic machinery.
struct ExpandedOde {
    enum class Kind { torus, euclidean_hopf, cylinder };
    Kind kind = Kind::cylinder;
    int k = 1;            // torus winding
    double lambda = 1.0;  // cylinder eigenvalue

    static ExpandedOde torus(int k) { return {Kind::torus, k, 0.0}; }
    static ExpandedOde euclidean_hopf() { return {Kind::euclidean_hopf, 0, 0.0}; }
    static ExpandedOde cylinder(double lambda) { return {Kind::cylinder, 0, lambda}; }
};

/// Literal transcription of the expanded equations (D = 1):
///   torus:          v - 2k^2 cos(2x) q + 2k^2 sin(2x) p^2 + (k^4/2) sin(2x)cos(2x)
///   euclidean_hopf: v - 20 q + 64 x          (m = 3, lambda = 8)
///   cylinder:       v - 2 lambda q + lambda^2 x
double expanded_ode_residual(const ExpandedOde& ode, const Jet4& jet);

/// Sparse first/second-derivative stencil rows of a grid, including the
/// clamped ghost-node synthesis from (value, slope) boundary data.  The
/// rows are shared by energy, gradient and Hessian assembly so that the
/// three are exact derivatives of one another.
struct StencilRows {
    struct Row {
        int idx[4] = {0, 0, 0, 0};
        double coef[4] = {0, 0, 0, 0};
        int len = 0;
        double constant = 0.0;  // boundary-data contribution

        double apply(const Eigen::Ref<const Eigen::VectorXd>& a) const {
            double s = constant;
            for (int m = 0; m < len; ++m) s += coef[m] * a[idx[m]];
            return s;
        }
    };
    std::vector<Row> p, q;     // one row per node
    Eigen::VectorXd w;         // quadrature weights
    Eigen::VectorXd t;         // node coordinates
    std::vector<int> free_nodes;
    std::vector<int> dof_of_node;  // -1 for constrained nodes
};

/// Builds the stencil rows for one profile component (`component` selects
/// the clamped boundary data column).
StencilRows build_stencils(const Grid& grid, int component);

/// Quadrature-discretized reduced bienergy: sum_i w_i L(t_i, jet_i) with
/// central difference jets (rectangle rule on periodic grids, trapezoid
/// on clamped).
double discrete_energy(const GeometrySpec& geom, const DiscreteFunction& df);

/// Exact gradient of discrete_energy with respect to the node values,
/// n x D; rows of boundary-constrained nodes are zero for clamped grids.
Eigen::MatrixXd discrete_gradient(const GeometrySpec& geom, const DiscreteFunction& df);

/// Exact Hessian of discrete_energy restricted to the free degrees of
/// freedom, ordered component-major (dof = comp * n_free + node_slot).
/// Symmetric by construction (mirrored entries are bit-identical) and
/// pentadiagonal per component (cyclic for periodic grids).
Eigen::SparseMatrix<double> discrete_hessian(const GeometrySpec& geom,
                                             const DiscreteFunction& df);

/// Free-dof packing helpers matching discrete_hessian's ordering.
Eigen::VectorXd pack_free(const Grid& grid, const Eigen::MatrixXd& node_values);
void unpack_free_add(const Grid& grid, const Eigen::VectorXd& packed, double scale,
                     Eigen::MatrixXd& node_values);

} // namespace biharm
