#include "biharm/geometry.hpp"

#include <cmath>

#include "biharm/errors.hpp"
#include "biharm/fd.hpp"

namespace biharm {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
// samples used to certify f > 0 on [a, b] at construction
constexpr int kWarpPositivitySamples = 2561;

/// One profile component's integrand and partials.  The catalog
/// Lagrangians act componentwise on vector profiles, so this is the whole
/// story; cross-component partials vanish.
struct ScalarPartials {
    double value = 0;
    double Lt = 0, Lx = 0, Lp = 0, Lq = 0;
    double Ltt = 0, Ltx = 0, Ltp = 0, Ltq = 0;
    double Lxx = 0, Lxp = 0, Lxq = 0, Lpp = 0, Lpq = 0, Lqq = 0;
};

double scalar_tension(const TorusToSphere& g, double /*t*/, double x, double /*p*/, double q) {
    const double k2 = static_cast<double>(g.k) * g.k;
    return q - k2 * std::sin(x) * std::cos(x);
}

double scalar_tension(const WarpedProduct& g, double t, double x, double p, double q) {
    const double F = g.f.value(t);
    return q + g.m * (g.f.d1(t) / F) * p - g.lambda * g.h.value(x) * g.h.d1(x) / (F * F);
}

double scalar_tension(const EuclideanLog& g, double /*t*/, double x, double p, double q) {
    return q + (g.m - 1) * p - g.lambda * x;
}

double scalar_tension(const Cylinder& g, double /*t*/, double x, double /*p*/, double q) {
    return q - g.lambda * x;
}

ScalarPartials scalar_partials(const TorusToSphere& g, double /*t*/, double x, double /*p*/,
                               double q) {
    const double k2 = static_cast<double>(g.k) * g.k;
    const double s2 = std::sin(2 * x), c2 = std::cos(2 * x);
    const double T = q - 0.5 * k2 * s2;
    const double Tx = -k2 * c2, Txx = 2 * k2 * s2;
    ScalarPartials r;
    r.value = T * T;
    r.Lx = 2 * T * Tx;
    r.Lq = 2 * T;
    r.Lxx = 2 * Tx * Tx + 2 * T * Txx;
    r.Lxq = 2 * Tx;
    r.Lqq = 2;
    return r;
}

ScalarPartials scalar_partials(const WarpedProduct& g, double t, double x, double p, double q) {
    const double F = g.f.value(t), F1 = g.f.d1(t), F2 = g.f.d2(t), F3 = g.f.d3(t);
    if (!(F > 0)) throw DomainError("warping function is non-positive at t");
    const double H = g.h.value(x), H1 = g.h.d1(x), H2 = g.h.d2(x), H3 = g.h.d3(x);
    const double m = g.m, lam = g.lambda;

    const double a = F1 / F;           // log-derivative of f
    const double a1 = F2 / F - a * a;
    const double a2 = F3 / F - a * (F2 / F) - 2 * a * a1;
    const double A = m * a, A1 = m * a1, A2 = m * a2;
    const double B = lam / (F * F);
    const double B1 = -2 * lam * F1 / (F * F * F);
    const double B2 = (6 * lam * F1 * F1 / F - 2 * lam * F2) / (F * F * F);
    const double G = H * H1;
    const double G1 = H1 * H1 + H * H2;
    const double G2 = 3 * H1 * H2 + H * H3;
    const double vol = std::pow(F, m);
    const double vol1 = m * std::pow(F, m - 1) * F1;
    const double vol2 = m * (m - 1) * std::pow(F, m - 2) * F1 * F1 + m * std::pow(F, m - 1) * F2;

    const double T = q + A * p - B * G;
    const double Tx = -B * G1, Txx = -B * G2;
    const double Tt = A1 * p - B1 * G, Ttt = A2 * p - B2 * G, Ttx = -B1 * G1;

    ScalarPartials r;
    r.value = T * T * vol;
    r.Lx = 2 * T * Tx * vol;
    r.Lp = 2 * T * A * vol;
    r.Lq = 2 * T * vol;
    r.Lt = 2 * T * Tt * vol + T * T * vol1;
    r.Lxx = (2 * Tx * Tx + 2 * T * Txx) * vol;
    r.Lxp = 2 * Tx * A * vol;
    r.Lxq = 2 * Tx * vol;
    r.Lpp = 2 * A * A * vol;
    r.Lpq = 2 * A * vol;
    r.Lqq = 2 * vol;
    r.Ltx = 2 * (Tt * Tx + T * Ttx) * vol + 2 * T * Tx * vol1;
    r.Ltp = 2 * (Tt * A + T * A1) * vol + 2 * T * A * vol1;
    r.Ltq = 2 * Tt * vol + 2 * T * vol1;
    r.Ltt = (2 * Tt * Tt + 2 * T * Ttt) * vol + 4 * T * Tt * vol1 + T * T * vol2;
    return r;
}

ScalarPartials scalar_partials(const EuclideanLog& g, double t, double x, double p, double q) {
    const double c = g.m - 3.0;
    const double vol = std::exp(c * t);
    const double mm1 = g.m - 1.0, lam = g.lambda;
    const double T = q + mm1 * p - lam * x;
    ScalarPartials r;
    r.value = T * T * vol;
    r.Lx = -2 * lam * T * vol;
    r.Lp = 2 * mm1 * T * vol;
    r.Lq = 2 * T * vol;
    r.Lt = c * r.value;
    r.Lxx = 2 * lam * lam * vol;
    r.Lxp = -2 * lam * mm1 * vol;
    r.Lxq = -2 * lam * vol;
    r.Lpp = 2 * mm1 * mm1 * vol;
    r.Lpq = 2 * mm1 * vol;
    r.Lqq = 2 * vol;
    r.Ltx = c * r.Lx;
    r.Ltp = c * r.Lp;
    r.Ltq = c * r.Lq;
    r.Ltt = c * c * r.value;
    return r;
}

ScalarPartials scalar_partials(const Cylinder& g, double /*t*/, double x, double /*p*/,
                               double q) {
    const double lam = g.lambda;
    const double T = q - lam * x;
    ScalarPartials r;
    r.value = T * T;
    r.Lx = -2 * lam * T;
    r.Lq = 2 * T;
    r.Lxx = 2 * lam * lam;
    r.Lxq = -2 * lam;
    r.Lqq = 2;
    return r;
}

void require_jet(const GeometrySpec& geom, const Jet2& jet) {
    if (!jet.well_formed()) throw DomainError("jet is malformed (sizes or non-finite entries)");
    geom.require_in_domain(jet.t);
}

} // namespace

Eigen::VectorXd PartialsL::grad_full() const {
    const int D = dim();
    Eigen::VectorXd g(1 + 3 * D);
    g[0] = Lt;
    g.segment(1, D) = Lx;
    g.segment(1 + D, D) = Lp;
    g.segment(1 + 2 * D, D) = Lq;
    return g;
}

double PartialsL::hess(int i, int j) const {
    const int D = dim();
    if (i > j) std::swap(i, j);
    // index 0 = t; 1..D = x; D+1..2D = p; 2D+1..3D = q
    auto block = [D](int a) { return a == 0 ? 0 : 1 + (a - 1) / D; };
    auto comp = [D](int a) { return a == 0 ? -1 : (a - 1) % D; };
    const int bi = block(i), bj = block(j);
    const int ci = comp(i), cj = comp(j);
    if (bi == 0 && bj == 0) return Ltt;
    if (bi == 0) {
        if (bj == 1) return Ltx[cj];
        if (bj == 2) return Ltp[cj];
        return Ltq[cj];
    }
    if (ci != cj) return 0.0;  // componentwise Lagrangian
    if (bi == 1 && bj == 1) return Lxx[ci];
    if (bi == 1 && bj == 2) return Lxp[ci];
    if (bi == 1 && bj == 3) return Lxq[ci];
    if (bi == 2 && bj == 2) return Lpp[ci];
    if (bi == 2 && bj == 3) return Lpq[ci];
    return Lqq[ci];
}

GeometrySpec GeometrySpec::torus_to_sphere(int k) {
    if (k == 0) throw DomainError("torus winding number k must be nonzero");
    return GeometrySpec(TorusToSphere{k});
}

GeometrySpec GeometrySpec::warped_product(int m, double lambda, WarpFn f, WarpFn h, double a,
                                          double b) {
    if (m < 1) throw DomainError("fiber dimension m must be positive");
    if (!(lambda > 0)) throw DomainError("eigenvalue lambda must be positive");
    if (!(a < b)) throw DomainError("domain requires a < b");
    double fmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kWarpPositivitySamples; ++i) {
        const double t = a + (b - a) * i / (kWarpPositivitySamples - 1.0);
        fmin = std::min(fmin, f.value(t));
    }
    if (!(fmin > 0))
        throw DomainError("domain warping must stay positive on [a, b]; sampled min = " +
                          std::to_string(fmin));
    WarpedProduct g;
    g.m = m;
    g.lambda = lambda;
    g.f = std::move(f);
    g.h = std::move(h);
    g.a = a;
    g.b = b;
    g.f_min = fmin;
    return GeometrySpec(std::move(g));
}

GeometrySpec GeometrySpec::euclidean_log(int m, double lambda, double a, double b) {
    if (m < 1) throw DomainError("fiber dimension m must be positive");
    if (!(lambda > 0)) throw DomainError("eigenvalue lambda must be positive");
    if (!(a < b)) throw DomainError("domain requires a < b");
    return GeometrySpec(EuclideanLog{m, lambda, a, b});
}

GeometrySpec GeometrySpec::cylinder(double lambda, double a, double b) {
    if (!(lambda > 0)) throw DomainError("eigenvalue lambda must be positive");
    if (!(a < b)) throw DomainError("domain requires a < b");
    return GeometrySpec(Cylinder{lambda, a, b});
}

bool GeometrySpec::periodic() const { return as_torus() != nullptr; }

double GeometrySpec::domain_a() const {
    if (as_torus()) return 0.0;
    if (auto* w = as_warped()) return w->a;
    if (auto* e = as_euclidean_log()) return e->a;
    return as_cylinder()->a;
}

double GeometrySpec::domain_b() const {
    if (as_torus()) return kTwoPi;
    if (auto* w = as_warped()) return w->b;
    if (auto* e = as_euclidean_log()) return e->b;
    return as_cylinder()->b;
}

std::string GeometrySpec::name() const {
    if (auto* t = as_torus()) return "torus_to_sphere(k=" + std::to_string(t->k) + ")";
    if (auto* w = as_warped())
        return "warped_product(m=" + std::to_string(w->m) + ", f=" + w->f.name() +
               ", h=" + w->h.name() + ")";
    if (auto* e = as_euclidean_log()) return "euclidean_log(m=" + std::to_string(e->m) + ")";
    return "cylinder";
}

void GeometrySpec::require_in_domain(double t) const {
    if (periodic()) return;  // any angle is identified into [0, 2pi)
    const double a = domain_a(), b = domain_b();
    const double slack = 1e-12 * (1.0 + std::abs(a) + std::abs(b));
    if (t < a - slack || t > b + slack)
        throw DomainError("t = " + std::to_string(t) + " outside domain [" +
                          std::to_string(a) + ", " + std::to_string(b) + "]");
}

double eval_lagrangian(const GeometrySpec& geom, const Jet2& jet) {
    require_jet(geom, jet);
    double sum = 0.0;
    for (int d = 0; d < jet.dim(); ++d) {
        const double t = jet.t, x = jet.x[d], p = jet.p[d], q = jet.q[d];
        if (auto* g = geom.as_torus()) sum += scalar_partials(*g, t, x, p, q).value;
        else if (auto* g = geom.as_warped()) sum += scalar_partials(*g, t, x, p, q).value;
        else if (auto* g = geom.as_euclidean_log()) sum += scalar_partials(*g, t, x, p, q).value;
        else sum += scalar_partials(*geom.as_cylinder(), t, x, p, q).value;
    }
    return sum;
}

PartialsL eval_partials(const GeometrySpec& geom, const Jet2& jet) {
    require_jet(geom, jet);
    const int D = jet.dim();
    PartialsL out;
    out.Lx.resize(D); out.Lp.resize(D); out.Lq.resize(D);
    out.Ltx.resize(D); out.Ltp.resize(D); out.Ltq.resize(D);
    out.Lxx.resize(D); out.Lxp.resize(D); out.Lxq.resize(D);
    out.Lpp.resize(D); out.Lpq.resize(D); out.Lqq.resize(D);
    for (int d = 0; d < D; ++d) {
        const double t = jet.t, x = jet.x[d], p = jet.p[d], q = jet.q[d];
        ScalarPartials s;
        if (auto* g = geom.as_torus()) s = scalar_partials(*g, t, x, p, q);
        else if (auto* g = geom.as_warped()) s = scalar_partials(*g, t, x, p, q);
        else if (auto* g = geom.as_euclidean_log()) s = scalar_partials(*g, t, x, p, q);
        else s = scalar_partials(*geom.as_cylinder(), t, x, p, q);
        out.value += s.value;
        out.Lt += s.Lt;
        out.Ltt += s.Ltt;
        out.Lx[d] = s.Lx; out.Lp[d] = s.Lp; out.Lq[d] = s.Lq;
        out.Ltx[d] = s.Ltx; out.Ltp[d] = s.Ltp; out.Ltq[d] = s.Ltq;
        out.Lxx[d] = s.Lxx; out.Lxp[d] = s.Lxp; out.Lxq[d] = s.Lxq;
        out.Lpp[d] = s.Lpp; out.Lpq[d] = s.Lpq; out.Lqq[d] = s.Lqq;
    }
    return out;
}

Eigen::VectorXd tension(const GeometrySpec& geom, const Jet2& jet) {
    require_jet(geom, jet);
    const int D = jet.dim();
    Eigen::VectorXd out(D);
    for (int d = 0; d < D; ++d) {
        const double t = jet.t, x = jet.x[d], p = jet.p[d], q = jet.q[d];
        if (auto* g = geom.as_torus()) out[d] = scalar_tension(*g, t, x, p, q);
        else if (auto* g = geom.as_warped()) out[d] = scalar_tension(*g, t, x, p, q);
        else if (auto* g = geom.as_euclidean_log()) out[d] = scalar_tension(*g, t, x, p, q);
        else out[d] = scalar_tension(*geom.as_cylinder(), t, x, p, q);
    }
    return out;
}

double volume_factor(const GeometrySpec& geom, double t) {
    geom.require_in_domain(t);
    if (auto* w = geom.as_warped()) {
        const double F = w->f.value(t);
        if (!(F > 0)) throw DomainError("warping function is non-positive at t");
        return std::pow(F, w->m);
    }
    if (auto* e = geom.as_euclidean_log()) return std::exp((e->m - 3.0) * t);
    return 1.0;
}

FdCheckReport check_partials_fd(const GeometrySpec& geom, const Jet2& jet, double step) {
    if (!(step > 0)) throw DomainError("step must be positive");
    const int D = jet.dim();
    const int N = 1 + 3 * D;
    const PartialsL an = eval_partials(geom, jet);

    auto shifted = [&](int var, double dv) {
        Jet2 j = jet;
        if (var == 0) j.t += dv;
        else if (var <= D) j.x[var - 1] += dv;
        else if (var <= 2 * D) j.p[var - 1 - D] += dv;
        else j.q[var - 1 - 2 * D] += dv;
        return j;
    };
    auto L1 = [&](int var, double dv) { return eval_lagrangian(geom, shifted(var, dv)); };
    auto L2 = [&](int vi, double di, int vj, double dj) {
        Jet2 j = shifted(vi, di);
        if (vj == 0) j.t += dj;
        else if (vj <= D) j.x[vj - 1] += dj;
        else if (vj <= 2 * D) j.p[vj - 1 - D] += dj;
        else j.q[vj - 1 - 2 * D] += dj;
        return eval_lagrangian(geom, j);
    };

    FdCheckReport rep;
    auto record = [&](double disc, const std::string& label) {
        if (disc > rep.max_discrepancy) {
            rep.max_discrepancy = disc;
            rep.worst_entry = label;
        }
    };
    auto var_name = [&](int v) {
        if (v == 0) return std::string("t");
        const int c = (v - 1) % D;
        const char* base = v <= D ? "x" : (v <= 2 * D ? "p" : "q");
        return D == 1 ? std::string(base) : std::string(base) + std::to_string(c);
    };

    const Eigen::VectorXd grad = an.grad_full();
    for (int v = 0; v < N; ++v) {
        auto f = [&](double tv) { return L1(v, tv); };
        const double fdv = fd::d1_richardson_up(f, 0.0, step);
        record(std::abs(fdv - grad[v]), "L_" + var_name(v));
    }

    // second partials use a floored step: dividing by h^2 amplifies
    // rounding noise too much below ~1e-3
    const double h2 = std::max(step, 2e-3);
    for (int i = 0; i < N; ++i) {
        for (int j = i; j < N; ++j) {
            double fdv;
            if (i == j) {
                auto f = [&](double tv) { return L1(i, tv); };
                fdv = fd::d2_richardson_up(f, 0.0, h2);
            } else {
                auto cross = [&](double h) {
                    return (L2(i, h, j, h) - L2(i, h, j, -h) - L2(i, -h, j, h) +
                            L2(i, -h, j, -h)) / (4 * h * h);
                };
                // the cross stencil is second order, so its Richardson
                // pair uses the (4, -1)/3 weights
                fdv = (4 * cross(h2) - cross(2 * h2)) / 3;
            }
            record(std::abs(fdv - an.hess(i, j)),
                   "L_" + var_name(i) + var_name(j));
        }
    }
    return rep;
}

} // namespace biharm
