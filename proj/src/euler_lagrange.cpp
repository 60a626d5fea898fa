#include "biharm/euler_lagrange.hpp"

#include <cmath>
#include <map>

#include "biharm/errors.hpp"
#include "biharm/fd.hpp"

namespace biharm {

double default_fd_step(const GeometrySpec& geom) {
    return 1e-3 * (geom.domain_b() - geom.domain_a());
}

Eigen::VectorXd el_residual_along_curve(const GeometrySpec& geom, const SmoothCurve& curve,
                                        double t, double fd_step) {
    if (!(fd_step > 0)) throw DomainError("fd_step must be positive");
    if (!geom.periodic()) {
        const double margin = 2 * fd_step;
        if (t - margin < geom.domain_a() || t + margin > geom.domain_b())
            throw DomainError("t too close to the boundary for the time stencil");
    }
    const int D = curve.dim();
    const PartialsL at_t = eval_partials(geom, curve.jet2(t));
    Eigen::VectorXd res(D);
    for (int d = 0; d < D; ++d) {
        auto Lp = [&](double tt) { return eval_partials(geom, curve.jet2(tt)).Lp[d]; };
        auto Lq = [&](double tt) { return eval_partials(geom, curve.jet2(tt)).Lq[d]; };
        const double dLp = fd::d1_richardson(Lp, t, fd_step);
        const double d2Lq = fd::d2_richardson(Lq, t, fd_step);
        res[d] = 0.5 * (at_t.Lx[d] - dLp + d2Lq);
    }
    return res;
}

double expanded_ode_residual(const ExpandedOde& ode, const Jet4& jet) {
    if (!jet.well_formed()) throw DomainError("jet is malformed");
    if (jet.dim() != 1) throw DomainError("expanded equations are scalar (D = 1)");
    const double x = jet.x[0], p = jet.p[0], q = jet.q[0], v = jet.v[0];
    switch (ode.kind) {
    case ExpandedOde::Kind::torus: {
        const double k2 = static_cast<double>(ode.k) * ode.k;
        const double s2 = std::sin(2 * x), c2 = std::cos(2 * x);
        return v - 2 * k2 * c2 * q + 2 * k2 * s2 * p * p + 0.5 * k2 * k2 * s2 * c2;
    }
    case ExpandedOde::Kind::euclidean_hopf:
        return v - 20 * q + 64 * x;
    case ExpandedOde::Kind::cylinder:
        return v - 2 * ode.lambda * q + ode.lambda * ode.lambda * x;
    }
    throw std::logic_error("unreachable");
}

StencilRows build_stencils(const Grid& grid, int component) {
    const int n = grid.n;
    const double h = grid.h();
    StencilRows s;
    s.p.resize(n);
    s.q.resize(n);
    s.w = Eigen::VectorXd::Constant(n, h);
    s.t = grid.nodes();
    s.dof_of_node.assign(n, -1);

    if (grid.periodic()) {
        for (int i = 0; i < n; ++i) {
            const int ip = (i + 1) % n, im = (i + n - 1) % n;
            s.p[i] = {{ip, im}, {1 / (2 * h), -1 / (2 * h)}, 2, 0.0};
            s.q[i] = {{ip, i, im}, {1 / (h * h), -2 / (h * h), 1 / (h * h)}, 3, 0.0};
            s.free_nodes.push_back(i);
            s.dof_of_node[i] = i;
        }
        return s;
    }

    // trapezoid weights
    s.w[0] = h / 2;
    s.w[n - 1] = h / 2;
    for (int i = 1; i < n - 1; ++i) {
        s.p[i] = {{i + 1, i - 1}, {1 / (2 * h), -1 / (2 * h)}, 2, 0.0};
        s.q[i] = {{i + 1, i, i - 1}, {1 / (h * h), -2 / (h * h), 1 / (h * h)}, 3, 0.0};
        s.free_nodes.push_back(i);
        s.dof_of_node[i] = i - 1;
    }
    const double sa = grid.bc.slope_a[component], sb = grid.bc.slope_b[component];
    // Ghost node from the (value, slope) data plus a one-sided second
    // difference:  g = x0 - h s_a + (h^2/2) qt,
    //              qt = (2 x0 - 5 x1 + 4 x2 - x3) / h^2,
    // folded into the node-0 stencils:
    //   p0 = [-2 x0 + (7/2) x1 - 2 x2 + (1/2) x3]/(2h) + s_a/2
    //   q0 = [-(3/2) x1 + 2 x2 - (1/2) x3]/h^2 - s_a/h
    s.p[0] = {{0, 1, 2, 3},
              {-2 / (2 * h), 3.5 / (2 * h), -2 / (2 * h), 0.5 / (2 * h)},
              4, sa / 2};
    s.q[0] = {{1, 2, 3},
              {-1.5 / (h * h), 2 / (h * h), -0.5 / (h * h)},
              3, -sa / h};
    const int e = n - 1;
    s.p[e] = {{e, e - 1, e - 2, e - 3},
              {2 / (2 * h), -3.5 / (2 * h), 2 / (2 * h), -0.5 / (2 * h)},
              4, sb / 2};
    s.q[e] = {{e - 1, e - 2, e - 3},
              {-1.5 / (h * h), 2 / (h * h), -0.5 / (h * h)},
              3, sb / h};
    return s;
}

namespace {

void require_geometry_grid(const GeometrySpec& geom, const DiscreteFunction& df) {
    require_compatible(geom, df);
}

} // namespace

double discrete_energy(const GeometrySpec& geom, const DiscreteFunction& df) {
    require_geometry_grid(geom, df);
    const int n = df.n(), D = df.dim();
    double total = 0.0;
    for (int d = 0; d < D; ++d) {
        const StencilRows s = build_stencils(df.grid, d);
        const auto col = df.values.col(d);
        double comp = 0.0;
        for (int i = 0; i < n; ++i) {
            const Jet2 jet = Jet2::scalar(s.t[i], col[i], s.p[i].apply(col), s.q[i].apply(col));
            comp += s.w[i] * eval_lagrangian(geom, jet);
        }
        total += comp;
    }
    return total;
}

Eigen::MatrixXd discrete_gradient(const GeometrySpec& geom, const DiscreteFunction& df) {
    require_geometry_grid(geom, df);
    const int n = df.n(), D = df.dim();
    Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(n, D);
    for (int d = 0; d < D; ++d) {
        const StencilRows s = build_stencils(df.grid, d);
        const auto col = df.values.col(d);
        Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < n; ++i) {
            const Jet2 jet = Jet2::scalar(s.t[i], col[i], s.p[i].apply(col), s.q[i].apply(col));
            const PartialsL pl = eval_partials(geom, jet);
            const double wi = s.w[i];
            g[i] += wi * pl.Lx[0];
            for (int m = 0; m < s.p[i].len; ++m)
                g[s.p[i].idx[m]] += wi * pl.Lp[0] * s.p[i].coef[m];
            for (int m = 0; m < s.q[i].len; ++m)
                g[s.q[i].idx[m]] += wi * pl.Lq[0] * s.q[i].coef[m];
        }
        for (int i : s.free_nodes) grad(i, d) = g[i];
    }
    return grad;
}

Eigen::SparseMatrix<double> discrete_hessian(const GeometrySpec& geom,
                                             const DiscreteFunction& df) {
    require_geometry_grid(geom, df);
    const int n = df.n(), D = df.dim();
    const StencilRows probe = build_stencils(df.grid, 0);
    const int nfree = static_cast<int>(probe.free_nodes.size());
    const int dim = nfree * D;

    // accumulate per-cell in a deterministic order so mirrored entries
    // receive identical addition sequences (exact symmetry)
    std::vector<std::map<int, double>> rows(dim);
    auto add = [&](int r, int c, double v) { rows[r][c] += v; };

    for (int d = 0; d < D; ++d) {
        const StencilRows s = build_stencils(df.grid, d);
        const auto col = df.values.col(d);
        const int off = d * nfree;
        for (int i = 0; i < n; ++i) {
            const Jet2 jet = Jet2::scalar(s.t[i], col[i], s.p[i].apply(col), s.q[i].apply(col));
            const PartialsL pl = eval_partials(geom, jet);
            const double wi = s.w[i];

            // local dof list: node i (x slot) plus stencil supports
            int loc[6];
            double vx[6] = {0, 0, 0, 0, 0, 0}, vp[6] = {0, 0, 0, 0, 0, 0},
                   vq[6] = {0, 0, 0, 0, 0, 0};
            int nl = 0;
            auto slot = [&](int node) {
                for (int m = 0; m < nl; ++m)
                    if (loc[m] == node) return m;
                loc[nl] = node;
                return nl++;
            };
            vx[slot(i)] += 1.0;
            for (int m = 0; m < s.p[i].len; ++m) vp[slot(s.p[i].idx[m])] += s.p[i].coef[m];
            for (int m = 0; m < s.q[i].len; ++m) vq[slot(s.q[i].idx[m])] += s.q[i].coef[m];

            for (int a = 0; a < nl; ++a) {
                const int ra = s.dof_of_node[loc[a]];
                if (ra < 0) continue;
                for (int b = a; b < nl; ++b) {
                    const int rb = s.dof_of_node[loc[b]];
                    if (rb < 0) continue;
                    const double v =
                        wi * (pl.Lxx[0] * vx[a] * vx[b] +
                              pl.Lxp[0] * (vx[a] * vp[b] + vp[a] * vx[b]) +
                              pl.Lxq[0] * (vx[a] * vq[b] + vq[a] * vx[b]) +
                              pl.Lpp[0] * vp[a] * vp[b] +
                              pl.Lpq[0] * (vp[a] * vq[b] + vq[a] * vp[b]) +
                              pl.Lqq[0] * vq[a] * vq[b]);
                    add(off + ra, off + rb, v);
                    if (ra != rb) add(off + rb, off + ra, v);
                }
            }
        }
    }

    Eigen::SparseMatrix<double> H(dim, dim);
    std::vector<Eigen::Triplet<double>> trips;
    for (int r = 0; r < dim; ++r)
        for (const auto& [c, v] : rows[r]) trips.emplace_back(r, c, v);
    H.setFromTriplets(trips.begin(), trips.end());
    return H;
}

Eigen::VectorXd pack_free(const Grid& grid, const Eigen::MatrixXd& node_values) {
    const StencilRows s = build_stencils(grid, 0);
    const int nfree = static_cast<int>(s.free_nodes.size());
    const int D = static_cast<int>(node_values.cols());
    Eigen::VectorXd out(nfree * D);
    for (int d = 0; d < D; ++d)
        for (int j = 0; j < nfree; ++j) out[d * nfree + j] = node_values(s.free_nodes[j], d);
    return out;
}

void unpack_free_add(const Grid& grid, const Eigen::VectorXd& packed, double scale,
                     Eigen::MatrixXd& node_values) {
    const StencilRows s = build_stencils(grid, 0);
    const int nfree = static_cast<int>(s.free_nodes.size());
    const int D = static_cast<int>(node_values.cols());
    for (int d = 0; d < D; ++d)
        for (int j = 0; j < nfree; ++j)
            node_values(s.free_nodes[j], d) += scale * packed[d * nfree + j];
}

} // namespace biharm
