#include "biharm/warp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "biharm/errors.hpp"

namespace biharm {

WarpFn WarpFn::identity() {
    WarpFn w;
    w.kind_ = WarpKind::identity;
    return w;
}

WarpFn WarpFn::sine() {
    WarpFn w;
    w.kind_ = WarpKind::sine;
    return w;
}

WarpFn WarpFn::hyperbolic_sine() {
    WarpFn w;
    w.kind_ = WarpKind::hyperbolic_sine;
    return w;
}

WarpFn WarpFn::constant(double c) {
    if (!(c > 0.0)) throw DomainError("constant warp requires c > 0");
    WarpFn w;
    w.kind_ = WarpKind::constant;
    w.c_ = c;
    return w;
}

WarpFn WarpFn::table(std::vector<double> r, std::vector<double> f) {
    if (r.size() != f.size() || r.size() < 3)
        throw DomainError("warp table needs >= 3 matching samples");
    if (!std::is_sorted(r.begin(), r.end()))
        throw DomainError("warp table knots must be increasing");
    WarpFn w;
    w.kind_ = WarpKind::user_table;
    w.knots_ = std::move(r);
    w.vals_ = std::move(f);

    // natural cubic spline second derivatives (tridiagonal solve)
    const int n = static_cast<int>(w.knots_.size());
    std::vector<double> a(n, 0), b(n, 0), c(n, 0), d(n, 0);
    b[0] = b[n - 1] = 1.0;
    for (int i = 1; i < n - 1; ++i) {
        const double hl = w.knots_[i] - w.knots_[i - 1];
        const double hr = w.knots_[i + 1] - w.knots_[i];
        a[i] = hl;
        b[i] = 2 * (hl + hr);
        c[i] = hr;
        d[i] = 6 * ((w.vals_[i + 1] - w.vals_[i]) / hr - (w.vals_[i] - w.vals_[i - 1]) / hl);
    }
    for (int i = 1; i < n; ++i) {
        const double f2 = a[i] / b[i - 1];
        b[i] -= f2 * c[i - 1];
        d[i] -= f2 * d[i - 1];
    }
    w.m2_.assign(n, 0.0);
    w.m2_[n - 1] = d[n - 1] / b[n - 1];
    for (int i = n - 2; i >= 0; --i) w.m2_[i] = (d[i] - c[i] * w.m2_[i + 1]) / b[i];
    return w;
}

int WarpFn::find_interval(double r) const {
    const int n = static_cast<int>(knots_.size());
    if (r < knots_.front() || r > knots_.back())
        throw DomainError("warp table evaluated outside its knot range");
    int i = static_cast<int>(std::upper_bound(knots_.begin(), knots_.end(), r) -
                             knots_.begin()) - 1;
    return std::clamp(i, 0, n - 2);
}

double WarpFn::value(double r) const {
    switch (kind_) {
    case WarpKind::identity: return r;
    case WarpKind::sine: return std::sin(r);
    case WarpKind::hyperbolic_sine: return std::sinh(r);
    case WarpKind::constant: return c_;
    case WarpKind::user_table: {
        const int i = find_interval(r);
        const double h = knots_[i + 1] - knots_[i];
        const double A = (knots_[i + 1] - r) / h, B = (r - knots_[i]) / h;
        return A * vals_[i] + B * vals_[i + 1] +
               ((A * A * A - A) * m2_[i] + (B * B * B - B) * m2_[i + 1]) * h * h / 6.0;
    }
    }
    throw std::logic_error("unreachable");
}

double WarpFn::d1(double r) const {
    switch (kind_) {
    case WarpKind::identity: return 1.0;
    case WarpKind::sine: return std::cos(r);
    case WarpKind::hyperbolic_sine: return std::cosh(r);
    case WarpKind::constant: return 0.0;
    case WarpKind::user_table: {
        const int i = find_interval(r);
        const double h = knots_[i + 1] - knots_[i];
        const double A = (knots_[i + 1] - r) / h, B = (r - knots_[i]) / h;
        return (vals_[i + 1] - vals_[i]) / h -
               (3 * A * A - 1) * h * m2_[i] / 6.0 + (3 * B * B - 1) * h * m2_[i + 1] / 6.0;
    }
    }
    throw std::logic_error("unreachable");
}

double WarpFn::d2(double r) const {
    switch (kind_) {
    case WarpKind::identity: return 0.0;
    case WarpKind::sine: return -std::sin(r);
    case WarpKind::hyperbolic_sine: return std::sinh(r);
    case WarpKind::constant: return 0.0;
    case WarpKind::user_table: {
        const int i = find_interval(r);
        const double h = knots_[i + 1] - knots_[i];
        const double A = (knots_[i + 1] - r) / h, B = (r - knots_[i]) / h;
        return A * m2_[i] + B * m2_[i + 1];
    }
    }
    throw std::logic_error("unreachable");
}

double WarpFn::d3(double r) const {
    switch (kind_) {
    case WarpKind::identity: return 0.0;
    case WarpKind::sine: return -std::cos(r);
    case WarpKind::hyperbolic_sine: return std::cosh(r);
    case WarpKind::constant: return 0.0;
    case WarpKind::user_table: {
        const int i = find_interval(r);
        const double h = knots_[i + 1] - knots_[i];
        return (m2_[i + 1] - m2_[i]) / h;  // piecewise constant
    }
    }
    throw std::logic_error("unreachable");
}

std::string WarpFn::name() const {
    switch (kind_) {
    case WarpKind::identity: return "identity";
    case WarpKind::sine: return "sine";
    case WarpKind::hyperbolic_sine: return "hyperbolic_sine";
    case WarpKind::constant: return "constant";
    case WarpKind::user_table: return "user_table";
    }
    return "?";
}

} // namespace biharm
