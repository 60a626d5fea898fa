#include "biharm/stability.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "biharm/errors.hpp"

namespace biharm {

std::string to_string(Classification c) {
    switch (c) {
    case Classification::strict_local_min: return "strict_local_min";
    case Classification::degenerate: return "degenerate";
    case Classification::unstable: return "unstable";
    }
    return "?";
}

StabilityReport analyze_stability(const GeometrySpec& geom, const DiscreteFunction& critical,
                                  double pos_tol) {
    const double gnorm = pack_free(critical.grid, discrete_gradient(geom, critical)).norm();
    if (!(gnorm <= 1e-8))
        throw DomainError("profile is not a critical point (|grad| = " + std::to_string(gnorm) +
                          " > 1e-8)");

    const Eigen::SparseMatrix<double> H = discrete_hessian(geom, critical);
    const int dim = static_cast<int>(H.rows());
    if (dim > 2048)
        throw DomainError("dense eigensolve limited to 2048 degrees of freedom");

    const Eigen::MatrixXd Hd(H);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Hd);
    if (eig.info() != Eigen::Success) throw std::runtime_error("symmetric eigensolve failed");
    const Eigen::VectorXd& ev = eig.eigenvalues();  // ascending

    StabilityReport rep;
    rep.pos_tol = pos_tol >= 0 ? pos_tol : 1e-8 * Hd.diagonal().cwiseAbs().maxCoeff();
    const int nlow = std::min<int>(10, dim);
    rep.eigen_low = ev.head(nlow);
    const double lo = ev[0];
    if (lo > rep.pos_tol) rep.classification = Classification::strict_local_min;
    else if (lo < -rep.pos_tol) rep.classification = Classification::unstable;
    else rep.classification = Classification::degenerate;

    // Fourier-mode quadratic forms for periodic constant profiles, with
    // the classical closed-form reference for the torus family.
    if (critical.grid.periodic() && critical.dim() == 1) {
        const auto col = critical.values.col(0);
        const bool is_const = (col.array() - col[0]).abs().maxCoeff() <= 1e-12;
        if (is_const) {
            const int n = critical.n();
            for (int mode = 0; mode <= 8; ++mode) {
                Eigen::VectorXd V(n);
                for (int i = 0; i < n; ++i) V[i] = std::cos(mode * critical.grid.node(i));
                QuadFormCheck chk;
                chk.label = "cos(" + std::to_string(mode) + " t)";
                chk.discrete = V.dot(H * V);
                if (auto* tor = geom.as_torus()) {
                    const double k4 = std::pow(static_cast<double>(tor->k), 4);
                    const double m4 = std::pow(static_cast<double>(mode), 4);
                    // mode 0 integrates 2 k^4 over the full circle
                    chk.analytic = mode == 0 ? 4 * M_PI * k4 : 2 * M_PI * (m4 + k4);
                    chk.has_analytic = true;
                }
                rep.quad_form_checks.push_back(std::move(chk));
            }
        }
    }
    return rep;
}

std::pair<double, double> quad_form_vs_analytic(int k, int mode_n, int grid_n) {
    const GeometrySpec geom = GeometrySpec::torus_to_sphere(k);
    const Grid grid(0.0, 2 * M_PI, grid_n, BoundaryConditions::periodic());
    const DiscreteFunction df = DiscreteFunction::constant(grid, M_PI / 4);
    const Eigen::SparseMatrix<double> H = discrete_hessian(geom, df);
    Eigen::VectorXd V(grid_n);
    for (int i = 0; i < grid_n; ++i) V[i] = std::cos(mode_n * grid.node(i));
    const double discrete = V.dot(H * V);
    const double k4 = std::pow(static_cast<double>(k), 4);
    const double m4 = std::pow(static_cast<double>(mode_n), 4);
    // closed-form value of the classical second-variation integral for
    // this mode; mode 0 integrates 2 k^4 over the full circle
    const double analytic = mode_n == 0 ? 4 * M_PI * k4 : 2 * M_PI * (m4 + k4);
    return {discrete, analytic};
}

} // namespace biharm
