#include "biharm/spline.hpp"

#include <algorithm>
#include <cmath>

#include "biharm/errors.hpp"

namespace biharm {

namespace {

// quintic matching (value, d1, d2) at both interval ends, in the local
// variable s in [0, 1] with derivatives scaled by h
std::array<double, 6> hermite_quintic(double y0, double m0, double c0, double y1, double m1,
                                      double c1) {
    std::array<double, 6> a{};
    a[0] = y0;
    a[1] = m0;
    a[2] = c0 / 2;
    a[3] = -10 * y0 - 6 * m0 - 1.5 * c0 + 10 * y1 - 4 * m1 + 0.5 * c1;
    a[4] = 15 * y0 + 8 * m0 + 1.5 * c0 - 15 * y1 + 7 * m1 - c1;
    a[5] = -6 * y0 - 3 * m0 - 0.5 * c0 + 6 * y1 - 3 * m1 + 0.5 * c1;
    return a;
}

} // namespace

QuinticSplineCurve::QuinticSplineCurve(const DiscreteFunction& df) {
    if (df.dim() != 1) throw DomainError("spline interpolation is scalar (D = 1)");
    const Grid& g = df.grid;
    const int n = g.n;
    a_ = g.a;
    b_ = g.b;
    h_ = g.h();
    periodic_ = g.periodic();
    n_intervals_ = periodic_ ? n : n - 1;

    const auto x = df.values.col(0);
    auto at = [&](int i) { return x[((i % n) + n) % n]; };

    // nodal derivative estimates (fourth-order central where possible)
    Eigen::VectorXd d1(n), d2(n);
    for (int i = 0; i < n; ++i) {
        if (periodic_ || (i >= 2 && i <= n - 3)) {
            d1[i] = (-at(i + 2) + 8 * at(i + 1) - 8 * at(i - 1) + at(i - 2)) / (12 * h_);
            d2[i] = (-at(i + 2) + 16 * at(i + 1) - 30 * at(i) + 16 * at(i - 1) - at(i - 2)) /
                    (12 * h_ * h_);
        }
    }
    if (!periodic_) {
        // clamped endpoints carry exact slopes; curvatures one-sided
        d1[0] = g.bc.slope_a[0];
        d1[n - 1] = g.bc.slope_b[0];
        d1[1] = (x[2] - x[0]) / (2 * h_);
        d1[n - 2] = (x[n - 1] - x[n - 3]) / (2 * h_);
        d2[0] = (2 * x[0] - 5 * x[1] + 4 * x[2] - x[3]) / (h_ * h_);
        d2[n - 1] = (2 * x[n - 1] - 5 * x[n - 2] + 4 * x[n - 3] - x[n - 4]) / (h_ * h_);
        d2[1] = (x[2] - 2 * x[1] + x[0]) / (h_ * h_);
        d2[n - 2] = (x[n - 1] - 2 * x[n - 2] + x[n - 3]) / (h_ * h_);
    }

    coef_.resize(n_intervals_);
    for (int i = 0; i < n_intervals_; ++i) {
        const int j = periodic_ ? (i + 1) % n : i + 1;
        coef_[i] = hermite_quintic(x[i], h_ * d1[i], h_ * h_ * d2[i], at(j), h_ * d1[j],
                                   h_ * h_ * d2[j]);
    }
}

Jet4 QuinticSplineCurve::jet(double t) const {
    double tt = t;
    if (periodic_) {
        const double L = b_ - a_;
        tt = a_ + std::fmod(std::fmod(t - a_, L) + L, L);
    } else if (t < a_ - 1e-12 * (1 + std::abs(a_)) || t > b_ + 1e-12 * (1 + std::abs(b_))) {
        throw DomainError("spline evaluated outside its interval");
    }
    int i = static_cast<int>(std::floor((tt - a_) / h_));
    i = std::clamp(i, 0, n_intervals_ - 1);
    const double s = (tt - (a_ + i * h_)) / h_;
    const auto& a = coef_[i];

    double y = 0, y1 = 0, y2 = 0, y3 = 0, y4 = 0;
    for (int k = 5; k >= 0; --k) y = y * s + a[k];
    for (int k = 5; k >= 1; --k) y1 = y1 * s + k * a[k];
    for (int k = 5; k >= 2; --k) y2 = y2 * s + k * (k - 1) * a[k];
    for (int k = 5; k >= 3; --k) y3 = y3 * s + k * (k - 1) * (k - 2) * a[k];
    for (int k = 5; k >= 4; --k) y4 = y4 * s + k * (k - 1) * (k - 2) * (k - 3) * a[k];

    const double ih = 1.0 / h_;
    return Jet4::scalar(t, y, y1 * ih, y2 * ih * ih, y3 * ih * ih * ih,
                        y4 * ih * ih * ih * ih);
}

} // namespace biharm
