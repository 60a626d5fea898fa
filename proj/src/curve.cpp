#include "biharm/curve.hpp"

#include <cmath>

#include "biharm/fd.hpp"

namespace biharm {

Jet4 FourierCurve::jet(double t) const {
    double x = base_, p = 0, q = 0, u = 0, v = 0;
    for (const Term& tm : terms_) {
        const double w = tm.mode;
        const double c = std::cos(w * t + tm.phase), s = std::sin(w * t + tm.phase);
        x += tm.amplitude * c;
        p += -tm.amplitude * w * s;
        q += -tm.amplitude * w * w * c;
        u += tm.amplitude * w * w * w * s;
        v += tm.amplitude * w * w * w * w * c;
    }
    return Jet4::scalar(t, x, p, q, u, v);
}

double curve_consistency(const SmoothCurve& curve, double a, double b, int samples,
                         double step) {
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double t = a + (b - a) * (i + 0.5) / samples;
        const Jet4 j = curve.jet(t);
        for (int d = 0; d < curve.dim(); ++d) {
            auto x = [&](double tt) { return curve.jet(tt).x[d]; };
            auto p = [&](double tt) { return curve.jet(tt).p[d]; };
            auto q = [&](double tt) { return curve.jet(tt).q[d]; };
            const double scale = 1.0 + std::abs(j.x[d]) + std::abs(j.p[d]) + std::abs(j.q[d]);
            worst = std::max(worst, std::abs(fd::d1_central4(x, t, step) - j.p[d]) / scale);
            worst = std::max(worst, std::abs(fd::d1_central4(p, t, step) - j.q[d]) / scale);
            worst = std::max(worst, std::abs(fd::d1_central4(q, t, step) - j.u[d]) / scale);
        }
    }
    return worst;
}

} // namespace biharm
