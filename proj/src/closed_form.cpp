#include "biharm/closed_form.hpp"

#include <algorithm>
#include <cmath>

#include "biharm/errors.hpp"
#include "biharm/euler_lagrange.hpp"

namespace biharm {

namespace {

std::vector<ExpPolyTerm> differentiate_terms(const std::vector<ExpPolyTerm>& terms) {
    std::vector<ExpPolyTerm> out;
    for (const ExpPolyTerm& t : terms) {
        // d/dt [c t^j e^{rt}] = c j t^{j-1} e^{rt} + c r t^j e^{rt}
        if (t.power > 0) out.push_back({t.coeff * t.power, t.power - 1, t.rate});
        if (t.rate != 0.0) out.push_back({t.coeff * t.rate, t.power, t.rate});
    }
    // merge duplicates (same power and rate) for compactness
    std::vector<ExpPolyTerm> merged;
    for (const ExpPolyTerm& t : out) {
        bool found = false;
        for (ExpPolyTerm& m : merged) {
            if (m.power == t.power && m.rate == t.rate) {
                m.coeff += t.coeff;
                found = true;
                break;
            }
        }
        if (!found) merged.push_back(t);
    }
    return merged;
}

double eval_terms(const std::vector<ExpPolyTerm>& terms, double t) {
    double s = 0.0;
    for (const ExpPolyTerm& tm : terms)
        s += tm.coeff * std::pow(t, tm.power) * std::exp(tm.rate * t);
    return s;
}

} // namespace

ExpPolySolution::ExpPolySolution(std::vector<ExpPolyTerm> terms) : terms_(std::move(terms)) {
    for (const ExpPolyTerm& t : terms_)
        if (t.power < 0) throw DomainError("exp-poly powers must be nonnegative");
    deriv_.resize(4);
    deriv_[0] = differentiate_terms(terms_);
    for (int k = 1; k < 4; ++k) deriv_[k] = differentiate_terms(deriv_[k - 1]);
}

double ExpPolySolution::value(double t) const { return eval_terms(terms_, t); }

ExpPolySolution ExpPolySolution::derivative() const {
    return ExpPolySolution(differentiate_terms(terms_));
}

ExpPolySolution ExpPolySolution::scaled(double a) const {
    std::vector<ExpPolyTerm> t = terms_;
    for (ExpPolyTerm& tm : t) tm.coeff *= a;
    return ExpPolySolution(std::move(t));
}

ExpPolySolution ExpPolySolution::plus(const ExpPolySolution& other) const {
    std::vector<ExpPolyTerm> t = terms_;
    t.insert(t.end(), other.terms_.begin(), other.terms_.end());
    return ExpPolySolution(std::move(t));
}

Jet4 ExpPolySolution::jet(double t) const {
    return Jet4::scalar(t, eval_terms(terms_, t), eval_terms(deriv_[0], t),
                        eval_terms(deriv_[1], t), eval_terms(deriv_[2], t),
                        eval_terms(deriv_[3], t));
}

std::vector<std::pair<double, int>> characteristic_roots(OdeFamily family, double lambda) {
    if (family == OdeFamily::euclidean_hopf) {
        // y^2 - 20 y + 64 = 0 -> y = 16, 4; roots +-4, +-2
        const double disc = std::sqrt(20.0 * 20.0 - 4.0 * 64.0);  // = 12
        const double y1 = (20.0 + disc) / 2.0, y2 = (20.0 - disc) / 2.0;
        return {{std::sqrt(y1), 1}, {-std::sqrt(y1), 1}, {std::sqrt(y2), 1}, {-std::sqrt(y2), 1}};
    }
    if (!(lambda > 0)) throw DomainError("cylinder roots need lambda > 0");
    const double s = std::sqrt(lambda);  // (r^2 - lambda)^2: double roots
    return {{s, 2}, {-s, 2}};
}

std::vector<ExpPolySolution> basis_solutions(OdeFamily family, double lambda) {
    if (family == OdeFamily::euclidean_hopf) {
        return {ExpPolySolution({{1.0, 0, 4.0}}), ExpPolySolution({{1.0, 0, -4.0}}),
                ExpPolySolution({{1.0, 0, 2.0}}), ExpPolySolution({{1.0, 0, -2.0}})};
    }
    if (!(lambda > 0)) throw DomainError("cylinder basis needs lambda > 0");
    const double s = std::sqrt(lambda);
    return {ExpPolySolution({{1.0, 0, s}}), ExpPolySolution({{1.0, 0, -s}}),
            ExpPolySolution({{1.0, 1, s}}), ExpPolySolution({{1.0, 1, -s}})};
}

SampsonReport sampson_analyze(double lambda) {
    if (!(lambda > 0)) throw DomainError("sampson_analyze requires lambda > 0");
    const double s = std::sqrt(lambda);
    // alpha(r) = (s r) sinh(s r) + e^{s r}
    //          = e^{s r} + (s/2) r e^{s r} - (s/2) r e^{-s r}
    const ExpPolySolution alpha(
        {{1.0, 0, s}, {0.5 * s, 1, s}, {-0.5 * s, 1, -s}});
    const ExpPolySolution dalpha = alpha.derivative();

    SampsonReport rep;
    rep.lambda = lambda;

    // the profile solves the cylinder equation exactly; spot-check it on a
    // moderate window (the residual roundoff scales with the huge values
    // the profile takes near the scan ends)
    const ExpandedOde ode = ExpandedOde::cylinder(lambda);
    const double span = 10.0 / s;
    for (int i = 0; i < 20; ++i) {
        const double r = (-2.0 + 4.0 * i / 19.0) / s;
        rep.ode_residual_max =
            std::max(rep.ode_residual_max, std::abs(expanded_ode_residual(ode, alpha.jet(r))));
    }

    // bracket the stationary point by a sign-change scan of alpha'
    // (alpha'' > 0 everywhere, so the root is unique)
    const int scan = 2000;
    double lo = 0, hi = 0;
    bool found = false;
    double prev_r = -span, prev_v = dalpha.value(prev_r);
    for (int i = 1; i <= scan; ++i) {
        const double r = -span + 2 * span * i / scan;
        const double v = dalpha.value(r);
        if (prev_v == 0.0 || (prev_v < 0) != (v < 0)) {
            lo = prev_r;
            hi = r;
            found = true;
            break;
        }
        prev_r = r;
        prev_v = v;
    }
    if (!found)
        throw std::logic_error("no sign change of the derivative found; the profile's "
                               "derivative provably crosses zero near s r = -0.34");

    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        const double v = dalpha.value(mid);
        if (v == 0.0) {
            lo = hi = mid;
            break;
        }
        if ((dalpha.value(lo) < 0) == (v < 0)) lo = mid;
        else hi = mid;
    }
    rep.r0 = 0.5 * (lo + hi);
    rep.alpha_min = alpha.value(rep.r0);
    rep.derivative_at_r0 = dalpha.value(rep.r0);
    rep.violates_principle = rep.alpha_min > 0.0;
    rep.end_growth_margin =
        std::min(alpha.value(span), alpha.value(-span)) - rep.alpha_min - 1.0;
    return rep;
}

} // namespace biharm
