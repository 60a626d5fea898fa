#pragma once

#include <vector>

#include "biharm/curve.hpp"

namespace biharm {

/// One term c * t^j * e^{r t}.
struct ExpPolyTerm {
    double coeff = 0.0;
    int power = 0;  // nonnegative
    double rate = 0.0;
};

/// Exponential-polynomial curves sum c t^j e^{rt}: closed under exact
/// differentiation (product rule), so jets of any order are exact.
/// Houses the solution families of the constant-coefficient equations.
class ExpPolySolution : public SmoothCurve {
public:
    ExpPolySolution() = default;
    explicit ExpPolySolution(std::vector<ExpPolyTerm> terms);

    const std::vector<ExpPolyTerm>& terms() const { return terms_; }

    double value(double t) const;
    ExpPolySolution derivative() const;

    /// a * this (term-wise).
    ExpPolySolution scaled(double a) const;
    /// this + other (terms concatenated and merged).
    ExpPolySolution plus(const ExpPolySolution& other) const;

    Jet4 jet(double t) const override;

private:
    std::vector<ExpPolyTerm> terms_;
    // derivatives 1..4, built once at construction
    std::vector<std::vector<ExpPolyTerm>> deriv_;
};

enum class OdeFamily { euclidean_hopf, cylinder };

/// Characteristic roots with multiplicities, exact via the biquadratic
/// formula:
///   euclidean_hopf: r^4 - 20 r^2 + 64  ->  {4, -4, 2, -2}
///   cylinder:       r^4 - 2 l r^2 + l^2 = (r^2 - l)^2 -> {+-sqrt(l), double}
std::vector<std::pair<double, int>> characteristic_roots(OdeFamily family,
                                                         double lambda = 0.0);

/// The four basis solutions, in the order e^{4t}, e^{-4t}, e^{2t}, e^{-2t}
/// (euclidean_hopf) and e^{sr}, e^{-sr}, r e^{sr}, r e^{-sr} with
/// s = sqrt(lambda) (cylinder).
std::vector<ExpPolySolution> basis_solutions(OdeFamily family, double lambda = 0.0);

/// Analysis of the profile alpha(r) = (s r) sinh(s r) + e^{s r},
/// s = sqrt(lambda): an exact solution of the cylinder equation whose
/// absolute minimum is strictly positive, so the associated map sends
/// everything to one side of a sphere despite being non-constant.
struct SampsonReport {
    double lambda = 0.0;
    double r0 = 0.0;                 ///< location of the absolute minimum
    double alpha_min = 0.0;          ///< alpha(r0)
    bool violates_principle = false; ///< alpha_min > 0
    double derivative_at_r0 = 0.0;
    double end_growth_margin = 0.0;  ///< min alpha(+-10/s) - alpha_min - 1
    double ode_residual_max = 0.0;   ///< max residual over 20 verification points
};

/// Builds the profile, verifies it solves the cylinder equation, locates
/// the unique stationary point by sign-change scan plus bisection on the
/// exact derivative, and certifies it is the absolute minimum via the
/// end growth.  Throws DomainError for lambda <= 0.
SampsonReport sampson_analyze(double lambda);

} // namespace biharm
