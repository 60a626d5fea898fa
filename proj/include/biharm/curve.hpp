#pragma once

#include <memory>
#include <vector>

#include "biharm/jet.hpp"

namespace biharm {

/// A smooth profile curve that can produce exact jets up to fourth order
/// at any parameter value.
class SmoothCurve {
public:
    virtual ~SmoothCurve() = default;
    virtual int dim() const { return 1; }
    virtual Jet4 jet(double t) const = 0;
    Jet2 jet2(double t) const { return jet(t).jet2(); }
    double value(double t) const { return jet(t).x[0]; }
};

class ConstantCurve : public SmoothCurve {
public:
    explicit ConstantCurve(double value) : value_(value) {}
    Jet4 jet(double t) const override {
        return Jet4::scalar(t, value_, 0.0, 0.0, 0.0, 0.0);
    }

private:
    double value_;
};

/// base + sum of a_i * cos(m_i t + phase_i).
class FourierCurve : public SmoothCurve {
public:
    struct Term {
        double amplitude = 0.0;
        int mode = 1;
        double phase = 0.0;
    };

    FourierCurve(double base, std::vector<Term> terms)
        : base_(base), terms_(std::move(terms)) {}
    /// Single-term convenience: base + amplitude * cos(mode t).
    FourierCurve(double base, double amplitude, int mode)
        : FourierCurve(base, {Term{amplitude, mode, 0.0}}) {}

    Jet4 jet(double t) const override;

private:
    double base_;
    std::vector<Term> terms_;
};

/// Spot-check that a curve's stated derivatives are internally
/// consistent: compares p, q, u against finite differences of the lower
/// jet entries at `samples` points of [a, b].  Returns the worst
/// normalized mismatch (should be O(step^2)).
double curve_consistency(const SmoothCurve& curve, double a, double b, int samples,
                         double step);

} // namespace biharm
