#pragma once

#include <string>
#include <vector>

namespace biharm {

enum class WarpKind { identity, sine, hyperbolic_sine, constant, user_table };

/// Warping function of a warped-product metric, with closed-form
/// derivatives up to third order for the analytic kinds.  The tabulated
/// kind interpolates samples with a natural cubic spline, so its third
/// derivative is only piecewise constant.
class WarpFn {
public:
    WarpFn() = default;  // identity

    static WarpFn identity();
    static WarpFn sine();
    static WarpFn hyperbolic_sine();
    static WarpFn constant(double c);  // requires c > 0
    static WarpFn table(std::vector<double> r, std::vector<double> f);

    WarpKind kind() const { return kind_; }
    double constant_value() const { return c_; }

    double value(double r) const;
    double d1(double r) const;
    double d2(double r) const;
    double d3(double r) const;

    std::string name() const;

private:
    WarpKind kind_ = WarpKind::identity;
    double c_ = 1.0;
    // natural cubic spline data (user_table)
    std::vector<double> knots_, vals_, m2_;  // m2 = spline second derivatives
    int find_interval(double r) const;
};

} // namespace biharm
