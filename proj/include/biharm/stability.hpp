#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "biharm/euler_lagrange.hpp"

namespace biharm {

enum class Classification { strict_local_min, degenerate, unstable };

std::string to_string(Classification c);

struct QuadFormCheck {
    std::string label;       // e.g. "cos(3 t)"
    double discrete = 0.0;   // V^T H V on the sampled direction
    double analytic = 0.0;   // closed-form reference when available
    bool has_analytic = false;
};

/// Spectrum summary of the discrete Hessian restricted to admissible
/// variations (all nodes if periodic, interior nodes if clamped).
struct StabilityReport {
    Eigen::VectorXd eigen_low;  // 10 smallest eigenvalues, ascending
    Classification classification = Classification::degenerate;
    double pos_tol = 0.0;
    std::vector<QuadFormCheck> quad_form_checks;
};

/// Classifies a critical point by dense symmetric eigensolve of the
/// restricted Hessian.  Requires |gradient| <= 1e-8 (throws DomainError
/// otherwise) and at most 2048 free degrees of freedom.  pos_tol < 0
/// selects the scale-aware default 1e-8 * max |H_ii|.
StabilityReport analyze_stability(const GeometrySpec& geom, const DiscreteFunction& critical,
                                  double pos_tol = -1.0);

/// Discrete quadratic form V^T H V for the torus Hessian at the constant
/// quarter-latitude profile, with V = cos(mode_n * t) sampled on grid_n
/// nodes, paired with the classical closed-form value 2 pi (mode_n^4 + k^4).
/// Note: the measured second variation of this functional actually follows
/// 2 pi (mode_n^4 - k^4); the pair is returned so callers can compare.
std::pair<double, double> quad_form_vs_analytic(int k, int mode_n, int grid_n);

} // namespace biharm
