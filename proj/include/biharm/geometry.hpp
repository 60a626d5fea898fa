#pragma once

#include <string>
#include <variant>

#include <Eigen/Core>

#include "biharm/jet.hpp"
#include "biharm/warp.hpp"

namespace biharm {

/// Equivariant maps T^2 -> S^2, (gamma, theta) |-> (k gamma, alpha(theta)).
/// Profile domain is [0, 2pi], periodic; the rotation eigenvalue is k^2.
struct TorusToSphere {
    int k = 1;  // nonzero winding number
};

/// Equivariant maps between warped products
///   (S^m x (a,b), f^2(r) g_{S^m} + dr^2) -> (S^n x ..., h^2(alpha) g_{S^n} + dalpha^2)
/// through an eigenmap of eigenvalue lambda.
struct WarpedProduct {
    int m = 1;            // fiber sphere dimension
    double lambda = 1.0;  // eigenmap eigenvalue
    WarpFn f;             // domain warping, must stay positive on [a, b]
    WarpFn h;             // target warping
    double a = 0.0, b = 1.0;
    double f_min = 0.0;   // recorded at construction
};

/// The Euclidean case f(r) = r, h = id after the log substitution r = e^t.
struct EuclideanLog {
    int m = 1;
    double lambda = 1.0;
    double a = 0.0, b = 1.0;  // interval in the log variable t
};

/// Cylinder-to-Euclidean case: f constant, h = id.
struct Cylinder {
    double lambda = 1.0;
    double a = 0.0, b = 1.0;
};

/// Integrand value of the reduced bienergy together with all first and
/// second partial derivatives with respect to (t, x, p, q).
///
/// The catalog Lagrangians act componentwise on vector profiles, so
/// second partials between distinct components vanish identically; the
/// per-component slots below are the only nonzero entries.  hess() exposes
/// the full symmetric matrix view over the index order
/// (t, x_0..x_{D-1}, p_0.., q_0..).
struct PartialsL {
    double value = 0.0;
    double Lt = 0.0, Ltt = 0.0;
    Eigen::VectorXd Lx, Lp, Lq;
    Eigen::VectorXd Ltx, Ltp, Ltq;
    Eigen::VectorXd Lxx, Lxp, Lxq, Lpp, Lpq, Lqq;

    int dim() const { return static_cast<int>(Lx.size()); }
    /// Full gradient as (Lt, Lx.., Lp.., Lq..), length 1 + 3D.
    Eigen::VectorXd grad_full() const;
    /// Symmetric second-partial matrix entry; i, j in [0, 1 + 3D).
    double hess(int i, int j) const;
};

/// A member of the catalog of reduced problems.  Immutable once built.
class GeometrySpec {
public:
    static GeometrySpec torus_to_sphere(int k);
    static GeometrySpec warped_product(int m, double lambda, WarpFn f, WarpFn h,
                                       double a, double b);
    static GeometrySpec euclidean_log(int m, double lambda, double a, double b);
    static GeometrySpec cylinder(double lambda, double a, double b);

    bool periodic() const;
    double domain_a() const;
    double domain_b() const;
    std::string name() const;

    const TorusToSphere* as_torus() const { return std::get_if<TorusToSphere>(&v_); }
    const WarpedProduct* as_warped() const { return std::get_if<WarpedProduct>(&v_); }
    const EuclideanLog* as_euclidean_log() const { return std::get_if<EuclideanLog>(&v_); }
    const Cylinder* as_cylinder() const { return std::get_if<Cylinder>(&v_); }

    /// Throws DomainError unless t lies in the domain (periodic domains
    /// accept any t).
    void require_in_domain(double t) const;

private:
    explicit GeometrySpec(std::variant<TorusToSphere, WarpedProduct, EuclideanLog, Cylinder> v)
        : v_(std::move(v)) {}
    std::variant<TorusToSphere, WarpedProduct, EuclideanLog, Cylinder> v_;
};

/// Integrand of the reduced bienergy at a jet (overall constants dropped,
/// one convention per catalog entry; see README).  Nonnegative, and zero
/// exactly where the tension vanishes.
double eval_lagrangian(const GeometrySpec& geom, const Jet2& jet);

/// Integrand with all first and second partials, from closed-form
/// expressions (no numerics).
PartialsL eval_partials(const GeometrySpec& geom, const Jet2& jet);

/// Tension of the equivariant map at a jet, one entry per profile
/// component.  eval_lagrangian == |tension|^2 * volume_factor pointwise.
Eigen::VectorXd tension(const GeometrySpec& geom, const Jet2& jet);

/// The positive weight multiplying tension^2 in the integrand
/// (1 except for the warped-product and log-Euclidean entries).
double volume_factor(const GeometrySpec& geom, double t);

struct FdCheckReport {
    double max_discrepancy = 0.0;
    std::string worst_entry;  // which partial was furthest off
};

/// Compares every analytic partial in eval_partials against
/// Richardson-extrapolated central differences of eval_lagrangian.
/// Report-only; `step` is the first-derivative step (second-difference
/// steps are floored at 2e-3 for conditioning).
FdCheckReport check_partials_fd(const GeometrySpec& geom, const Jet2& jet, double step);

} // namespace biharm
