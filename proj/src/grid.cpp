#include "biharm/grid.hpp"

#include <cmath>

#include "biharm/errors.hpp"

namespace biharm {

BoundaryConditions BoundaryConditions::periodic() {
    BoundaryConditions bc;
    bc.kind = Kind::periodic;
    return bc;
}

BoundaryConditions BoundaryConditions::clamped(double va, double vb, double sa, double sb) {
    return clamped(Eigen::VectorXd::Constant(1, va), Eigen::VectorXd::Constant(1, vb),
                   Eigen::VectorXd::Constant(1, sa), Eigen::VectorXd::Constant(1, sb));
}

BoundaryConditions BoundaryConditions::clamped(Eigen::VectorXd va, Eigen::VectorXd vb,
                                               Eigen::VectorXd sa, Eigen::VectorXd sb) {
    if (va.size() != vb.size() || va.size() != sa.size() || va.size() != sb.size() ||
        va.size() < 1)
        throw DomainError("clamped boundary data must have matching component counts");
    BoundaryConditions bc;
    bc.kind = Kind::clamped;
    bc.value_a = std::move(va);
    bc.value_b = std::move(vb);
    bc.slope_a = std::move(sa);
    bc.slope_b = std::move(sb);
    return bc;
}

Grid::Grid(double a_, double b_, int n_, BoundaryConditions bc_)
    : a(a_), b(b_), n(n_), bc(std::move(bc_)) {
    if (!(a < b)) throw DomainError("grid requires a < b");
    if (n < 8) throw DomainError("grid requires n >= 8");
}

Eigen::VectorXd Grid::nodes() const {
    Eigen::VectorXd t(n);
    for (int i = 0; i < n; ++i) t[i] = node(i);
    return t;
}

DiscreteFunction::DiscreteFunction(Grid g, Eigen::MatrixXd vals)
    : grid(std::move(g)), values(std::move(vals)) {
    if (values.rows() != grid.n || values.cols() < 1)
        throw DomainError("discrete function size does not match its grid");
    if (!values.allFinite()) throw DomainError("discrete function has non-finite entries");
    if (!grid.periodic() && grid.bc.dim() != values.cols())
        throw DomainError("boundary data component count does not match values");
}

DiscreteFunction DiscreteFunction::constant(const Grid& g, double value) {
    return DiscreteFunction(g, Eigen::MatrixXd::Constant(g.n, 1, value));
}

DiscreteFunction DiscreteFunction::fourier(const Grid& g, double base, double amplitude,
                                           int mode) {
    Eigen::MatrixXd vals(g.n, 1);
    for (int i = 0; i < g.n; ++i) vals(i, 0) = base + amplitude * std::cos(mode * g.node(i));
    return DiscreteFunction(g, std::move(vals));
}

DiscreteFunction DiscreteFunction::linear(const Grid& g) {
    if (g.periodic()) throw DomainError("linear initial guess needs clamped boundary data");
    const double va = g.bc.value_a[0], vb = g.bc.value_b[0];
    Eigen::MatrixXd vals(g.n, 1);
    for (int i = 0; i < g.n; ++i) {
        const double s = static_cast<double>(i) / (g.n - 1);
        vals(i, 0) = va + (vb - va) * s;
    }
    // endpoints exactly the boundary values
    vals(0, 0) = va;
    vals(g.n - 1, 0) = vb;
    return DiscreteFunction(g, std::move(vals));
}

void require_compatible(const GeometrySpec& geom, const DiscreteFunction& df) {
    const Grid& g = df.grid;
    if (geom.periodic() != g.periodic())
        throw DomainError(geom.periodic() ? "this geometry requires a periodic grid"
                                          : "this geometry requires a clamped grid");
    const double a = geom.domain_a(), b = geom.domain_b();
    const double slack = 1e-10 * (1.0 + std::abs(a) + std::abs(b));
    if (std::abs(g.a - a) > slack || std::abs(g.b - b) > slack)
        throw DomainError("grid interval does not match the geometry domain");
    if (!g.periodic()) {
        for (int d = 0; d < df.dim(); ++d) {
            if (df.values(0, d) != g.bc.value_a[d] || df.values(g.n - 1, d) != g.bc.value_b[d])
                throw DomainError("clamped boundary rows must equal the prescribed values");
        }
    }
}

} // namespace biharm
