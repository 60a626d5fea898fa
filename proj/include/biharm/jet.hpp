#pragma once

#include <Eigen/Core>

namespace biharm {

/// Second-order jet of a profile curve: the evaluation point
/// (t, alpha, alpha', alpha'') of a second-order Lagrangian.
/// Profiles may be vector valued (D components); the scalar catalog
/// geometries all use D = 1.
struct Jet2 {
    double t = 0.0;
    Eigen::VectorXd x;  ///< profile value(s)
    Eigen::VectorXd p;  ///< first derivative per unit t
    Eigen::VectorXd q;  ///< second derivative per unit t^2

    Jet2() = default;
    Jet2(double t_, Eigen::VectorXd x_, Eigen::VectorXd p_, Eigen::VectorXd q_)
        : t(t_), x(std::move(x_)), p(std::move(p_)), q(std::move(q_)) {}

    /// Scalar (D = 1) convenience constructor.
    static Jet2 scalar(double t, double x, double p, double q) {
        Jet2 j;
        j.t = t;
        j.x = Eigen::VectorXd::Constant(1, x);
        j.p = Eigen::VectorXd::Constant(1, p);
        j.q = Eigen::VectorXd::Constant(1, q);
        return j;
    }

    int dim() const { return static_cast<int>(x.size()); }

    bool well_formed() const {
        if (x.size() < 1 || p.size() != x.size() || q.size() != x.size()) return false;
        return std::isfinite(t) && x.allFinite() && p.allFinite() && q.allFinite();
    }
};

/// Fourth-order jet: Jet2 extended with third and fourth derivatives,
/// as needed by the expanded fourth-order equations.
struct Jet4 : Jet2 {
    Eigen::VectorXd u;  ///< third derivative
    Eigen::VectorXd v;  ///< fourth derivative

    Jet4() = default;

    static Jet4 scalar(double t, double x, double p, double q, double u, double v) {
        Jet4 j;
        static_cast<Jet2&>(j) = Jet2::scalar(t, x, p, q);
        j.u = Eigen::VectorXd::Constant(1, u);
        j.v = Eigen::VectorXd::Constant(1, v);
        return j;
    }

    const Jet2& jet2() const { return *this; }

    bool well_formed() const {
        return Jet2::well_formed() && u.size() == x.size() && v.size() == x.size() &&
               u.allFinite() && v.allFinite();
    }
};

} // namespace biharm
