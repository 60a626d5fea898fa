#include "biharm/solver.hpp"

#include <cmath>

#include <Eigen/SparseLU>

#include "biharm/errors.hpp"

namespace biharm {

void SolveConfig::validate() const {
    if (max_iter < 1) throw DomainError("max_iter must be >= 1");
    if (!(grad_tol > 0)) throw DomainError("grad_tol must be positive");
    if (!(damping > 0) || damping > 1) throw DomainError("damping must lie in (0, 1]");
    if (regularization < 0) throw DomainError("regularization must be >= 0");
}

SolveReport solve(const GeometrySpec& geom, const DiscreteFunction& initial,
                  const SolveConfig& cfg) {
    cfg.validate();
    require_compatible(geom, initial);

    DiscreteFunction df = initial;
    const Grid& grid = df.grid;

    auto grad_packed = [&](const DiscreteFunction& f) {
        return pack_free(grid, discrete_gradient(geom, f));
    };

    Eigen::VectorXd g = grad_packed(df);
    double gnorm = g.norm();
    int accepted = 0;
    bool converged = gnorm <= cfg.grad_tol;

    constexpr double kMinStep = 9.5367431640625e-07;  // 2^-20
    constexpr double kMuMax = 1e6;

    while (!converged && accepted < cfg.max_iter) {
        const Eigen::SparseMatrix<double> H = discrete_hessian(geom, df);
        const int dim = static_cast<int>(H.rows());

        // Newton direction, Levenberg-shifted until it descends for |g|^2
        Eigen::VectorXd dir;
        double mu = cfg.regularization;
        bool have_dir = false;
        while (true) {
            Eigen::SparseMatrix<double> Hmu = H;
            if (mu > 0) {
                Eigen::SparseMatrix<double> shift(dim, dim);
                shift.setIdentity();
                Hmu += mu * shift;
            }
            Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
            lu.compute(Hmu);
            if (lu.info() == Eigen::Success) {
                dir = lu.solve(-g);
                // grad of |g|^2 is 2 H g
                if (dir.allFinite() && dir.dot(H * g) < 0) {
                    have_dir = true;
                    break;
                }
            }
            if (mu >= kMuMax) break;
            mu = (mu == 0) ? 1e-6 : mu * 10;
        }
        if (!have_dir) break;  // singular beyond rescue; report best iterate

        // halving line search on the gradient norm
        double step = cfg.damping;
        bool accepted_step = false;
        DiscreteFunction trial = df;
        Eigen::VectorXd gt;
        while (step >= kMinStep) {
            trial.values = df.values;
            unpack_free_add(grid, dir, step, trial.values);
            gt = grad_packed(trial);
            if (gt.norm() <= gnorm) {
                accepted_step = true;
                break;
            }
            step /= 2;
        }
        if (!accepted_step) break;  // stalled; |g|^2 cannot decrease further

        df.values.swap(trial.values);
        g.swap(gt);
        gnorm = g.norm();
        ++accepted;
        converged = gnorm <= cfg.grad_tol;
    }

    SolveReport rep;
    rep.solution = std::move(df);
    rep.grad_norm = gnorm;
    rep.iterations = accepted;
    rep.converged = converged;
    rep.energy = discrete_energy(geom, rep.solution);
    return rep;
}

ConvergenceStudy convergence_study(const GeometrySpec& geom, const SmoothCurve& exact,
                                   const std::vector<int>& grids, const SolveConfig& cfg) {
    if (grids.empty()) throw DomainError("convergence study needs at least one grid");
    for (std::size_t i = 1; i < grids.size(); ++i)
        if (grids[i] <= grids[i - 1]) throw DomainError("grids must be strictly increasing");
    if (geom.periodic())
        throw DomainError("convergence study uses clamped boundary data from the exact curve");

    const double a = geom.domain_a(), b = geom.domain_b();
    // the exact curve must be critical
    const double fd_step = default_fd_step(geom);
    for (int i = 1; i <= 5; ++i) {
        const double t = a + (b - a) * i / 6.0;
        const double res = el_residual_along_curve(geom, exact, t, fd_step).cwiseAbs().maxCoeff();
        if (!(res <= 1e-7))
            throw DomainError("exact curve fails the critical-point residual check: " +
                              std::to_string(res));
    }

    const Jet4 ja = exact.jet(a), jb = exact.jet(b);
    const BoundaryConditions bc =
        BoundaryConditions::clamped(ja.x[0], jb.x[0], ja.p[0], jb.p[0]);

    ConvergenceStudy study;
    study.grids = grids;
    for (int n : grids) {
        const Grid grid(a, b, n, bc);
        SolveReport rep = solve(geom, DiscreteFunction::linear(grid), cfg);
        if (!rep.converged)
            throw DomainError("solver failed to converge on n = " + std::to_string(n));
        double err = 0.0;
        for (int i = 0; i < n; ++i)
            err = std::max(err, std::abs(rep.solution.values(i, 0) - exact.value(grid.node(i))));
        study.sup_errors.push_back(err);
        study.reports.push_back(std::move(rep));
    }
    for (std::size_t i = 0; i + 1 < grids.size(); ++i) {
        // h ratio accounts for the (n-1) spacing of clamped grids
        const double hr = (grids[i + 1] - 1.0) / (grids[i] - 1.0);
        study.observed_orders.push_back(
            std::log(study.sup_errors[i] / study.sup_errors[i + 1]) / std::log(hr));
    }
    return study;
}

} // namespace biharm
