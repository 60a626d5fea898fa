#include "biharm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "biharm/closed_form.hpp"
#include "biharm/errors.hpp"
#include "biharm/euler_lagrange.hpp"
#include "biharm/fd.hpp"
#include "biharm/geometry.hpp"
#include "biharm/grid.hpp"

namespace biharm {

namespace {

struct Suite {
    std::uint64_t seed = 0;
    bool corrupt_partials = false;

    std::vector<GeometrySpec> catalog() const {
        return {GeometrySpec::torus_to_sphere(1), GeometrySpec::torus_to_sphere(2),
                GeometrySpec::warped_product(2, 2.0, WarpFn::hyperbolic_sine(), WarpFn::sine(),
                                             0.8, 1.6),
                GeometrySpec::euclidean_log(3, 8.0, 0.0, 1.0),
                GeometrySpec::cylinder(4.0, 0.0, 1.0)};
    }

    Jet2 random_jet(std::mt19937_64& rng, const GeometrySpec& geom) const {
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        const double a = geom.domain_a(), b = geom.domain_b();
        std::uniform_real_distribution<double> tdist(a + 0.05 * (b - a), b - 0.05 * (b - a));
        return Jet2::scalar(tdist(rng), unit(rng), unit(rng), unit(rng));
    }

    DiscreteFunction smooth_profile(std::mt19937_64& rng, const GeometrySpec& geom,
                                    int n) const {
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        const double a = geom.domain_a(), b = geom.domain_b();
        const double w = geom.periodic() ? 1.0 : M_PI / (b - a);
        auto profile = [&](double c0, double c1, double c2, double t) {
            return c0 + c1 * std::sin(w * (t - a)) + c2 * std::cos(2 * w * (t - a));
        };
        const double c0 = unit(rng), c1 = 0.5 * unit(rng), c2 = 0.25 * unit(rng);
        if (geom.periodic()) {
            const Grid grid(a, b, n, BoundaryConditions::periodic());
            Eigen::MatrixXd vals(n, 1);
            for (int i = 0; i < n; ++i) vals(i, 0) = profile(c0, c1, c2, grid.node(i));
            return DiscreteFunction(grid, std::move(vals));
        }
        // clamped data consistent with the sampled profile
        auto d1 = [&](double t) {
            return c1 * w * std::cos(w * (t - a)) - 2 * w * c2 * std::sin(2 * w * (t - a));
        };
        const Grid grid(a, b, n,
                        BoundaryConditions::clamped(profile(c0, c1, c2, a),
                                                    profile(c0, c1, c2, b), d1(a), d1(b)));
        Eigen::MatrixXd vals(n, 1);
        for (int i = 0; i < n; ++i) vals(i, 0) = profile(c0, c1, c2, grid.node(i));
        vals(0, 0) = grid.bc.value_a[0];
        vals(n - 1, 0) = grid.bc.value_b[0];
        return DiscreteFunction(grid, std::move(vals));
    }
};

SuiteResult suite_partials(const Suite& s) {
    std::mt19937_64 rng(s.seed + 101);
    double worst = 0.0;
    std::string where;
    for (const GeometrySpec& geom : s.catalog()) {
        for (int trial = 0; trial < 1000; ++trial) {
            const Jet2 jet = s.random_jet(rng, geom);
            FdCheckReport rep = check_partials_fd(geom, jet, 1e-3);
            if (s.corrupt_partials) {
                // mutation-test mode: corrupt the analytic L_p, then compare
                // it against the same FD oracle
                auto f = [&](double dv) {
                    Jet2 j = jet;
                    j.p[0] += dv;
                    return eval_lagrangian(geom, j);
                };
                const double fdv = fd::d1_richardson_up(f, 0.0, 1e-3);
                const double corrupted = eval_partials(geom, jet).Lp[0] + 1e-3;
                if (std::abs(fdv - corrupted) > rep.max_discrepancy) {
                    rep.max_discrepancy = std::abs(fdv - corrupted);
                    rep.worst_entry = "L_p (injected fault)";
                }
            }
            if (rep.max_discrepancy > worst) {
                worst = rep.max_discrepancy;
                where = geom.name() + " " + rep.worst_entry;
            }
        }
    }
    std::ostringstream detail;
    detail << "max |analytic - FD| = " << worst << " (bound 1e-7, worst " << where << ")";
    return {"partials", worst <= 1e-7, detail.str()};
}

SuiteResult suite_gradient(const Suite& s) {
    std::mt19937_64 rng(s.seed + 202);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double worst = 0.0;
    for (const GeometrySpec& geom : s.catalog()) {
        for (int trial = 0; trial < 100; ++trial) {
            const DiscreteFunction df = s.smooth_profile(rng, geom, 48);
            const Eigen::VectorXd g = pack_free(df.grid, discrete_gradient(geom, df));
            Eigen::VectorXd d(g.size());
            for (int i = 0; i < d.size(); ++i) d[i] = gauss(rng);
            d /= d.norm();
            const double eps = 1e-6;
            DiscreteFunction plus = df, minus = df;
            unpack_free_add(df.grid, d, eps, plus.values);
            unpack_free_add(df.grid, d, -eps, minus.values);
            const double fd =
                (discrete_energy(geom, plus) - discrete_energy(geom, minus)) / (2 * eps);
            const double rel = std::abs(g.dot(d) - fd) / std::max(std::abs(fd), 1e-12);
            worst = std::max(worst, rel);
        }
    }
    std::ostringstream detail;
    detail << "max relative gradient/FD mismatch = " << worst << " (bound 1e-6)";
    return {"gradient", worst <= 1e-6, detail.str()};
}

SuiteResult suite_hessian(const Suite& s) {
    std::mt19937_64 rng(s.seed + 303);
    double worst = 0.0, asym = 0.0;
    for (const GeometrySpec& geom : s.catalog()) {
        for (int trial = 0; trial < 20; ++trial) {
            const DiscreteFunction df = s.smooth_profile(rng, geom, 48);
            const Eigen::SparseMatrix<double> H = discrete_hessian(geom, df);
            asym = std::max(
                asym, (Eigen::MatrixXd(H) - Eigen::MatrixXd(H).transpose()).cwiseAbs().maxCoeff());
            std::uniform_int_distribution<int> mode(1, 4);
            const int mm = mode(rng);
            Eigen::VectorXd V(H.rows());
            const StencilRows rows = build_stencils(df.grid, 0);
            for (std::size_t j = 0; j < rows.free_nodes.size(); ++j)
                V[j] = std::cos(mm * rows.t[rows.free_nodes[j]]);
            V /= V.norm();
            const double quad = V.dot(H * V);
            const double eps = 1e-4;
            DiscreteFunction plus = df, minus = df;
            unpack_free_add(df.grid, V, eps, plus.values);
            unpack_free_add(df.grid, V, -eps, minus.values);
            const double fd = (discrete_energy(geom, plus) - 2 * discrete_energy(geom, df) +
                               discrete_energy(geom, minus)) /
                              (eps * eps);
            worst = std::max(worst, std::abs(quad - fd) / std::max(std::abs(fd), 1e-12));
        }
    }
    std::ostringstream detail;
    detail << "max relative quad-form/FD mismatch = " << worst
           << " (bound 1e-5); max asymmetry = " << asym << " (bound 0)";
    return {"hessian", worst <= 1e-5 && asym == 0.0, detail.str()};
}

SuiteResult suite_oracle(const Suite& s) {
    std::mt19937_64 rng(s.seed + 404);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> rate(-3.0, 3.0);
    double worst = 0.0;

    // torus: test curve pi/4 + 0.1 sin t
    {
        const GeometrySpec geom = GeometrySpec::torus_to_sphere(1);
        const FourierCurve curve(M_PI / 4, {{0.1, 1, -M_PI / 2}});  // 0.1 sin t
        const ExpandedOde ode = ExpandedOde::torus(1);
        const double fd = default_fd_step(geom);
        for (int i = 0; i < 50; ++i) {
            const double t = 0.1 + (2 * M_PI - 0.2) * i / 49.0;
            const double generic = el_residual_along_curve(geom, curve, t, fd)[0];
            const double expanded = expanded_ode_residual(ode, curve.jet(t));
            worst = std::max(worst, std::abs(generic - expanded));
        }
    }
    // constant-coefficient cases: random 4-term exponential curves
    struct Case {
        GeometrySpec geom;
        ExpandedOde ode;
    };
    const std::vector<Case> cases = {
        {GeometrySpec::euclidean_log(3, 8.0, 0.0, 1.0), ExpandedOde::euclidean_hopf()},
        {GeometrySpec::cylinder(4.0, 0.0, 1.0), ExpandedOde::cylinder(4.0)}};
    for (const Case& c : cases) {
        for (int rep = 0; rep < 5; ++rep) {
            std::vector<ExpPolyTerm> terms;
            for (int j = 0; j < 4; ++j) terms.push_back({unit(rng), 0, rate(rng)});
            const ExpPolySolution curve(terms);
            const double fd = default_fd_step(c.geom);
            for (int i = 0; i < 50; ++i) {
                const double t = 0.05 + 0.9 * i / 49.0;
                const double generic = el_residual_along_curve(c.geom, curve, t, fd)[0];
                const double expanded = expanded_ode_residual(c.ode, curve.jet(t));
                worst = std::max(worst, std::abs(generic - expanded));
            }
        }
    }
    std::ostringstream detail;
    detail << "max |generic EL - expanded form| = " << worst << " (bound 1e-6)";
    return {"oracle", worst <= 1e-6, detail.str()};
}

SuiteResult suite_closed_form(const Suite& s) {
    std::mt19937_64 rng(s.seed + 505);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> pts(-1.0, 1.0);
    double worst_exact = 0.0, worst_fd = 0.0;

    struct Case {
        OdeFamily family;
        double lambda;
        GeometrySpec geom;
        ExpandedOde ode;
    };
    const std::vector<Case> cases = {
        {OdeFamily::euclidean_hopf, 0.0, GeometrySpec::euclidean_log(3, 8.0, -1.0, 1.0),
         ExpandedOde::euclidean_hopf()},
        {OdeFamily::cylinder, 4.0, GeometrySpec::cylinder(4.0, -1.0, 1.0),
         ExpandedOde::cylinder(4.0)}};
    for (const Case& c : cases) {
        auto basis = basis_solutions(c.family, c.lambda);
        std::vector<ExpPolySolution> members = basis;
        for (int combo = 0; combo < 20; ++combo) {
            ExpPolySolution sum = basis[0].scaled(unit(rng));
            for (int j = 1; j < 4; ++j) sum = sum.plus(basis[j].scaled(unit(rng)));
            members.push_back(std::move(sum));
        }
        const double fd = default_fd_step(c.geom);
        for (const ExpPolySolution& member : members) {
            for (int i = 0; i < 50; ++i) {
                const double t = pts(rng);
                worst_exact = std::max(
                    worst_exact, std::abs(expanded_ode_residual(c.ode, member.jet(t))));
            }
            for (int i = 0; i < 10; ++i) {
                const double t = -0.9 + 1.8 * i / 9.0;
                worst_fd = std::max(
                    worst_fd,
                    std::abs(el_residual_along_curve(c.geom, member, t, fd)[0]));
            }
        }
    }
    std::ostringstream detail;
    detail << "max exact-jet residual = " << worst_exact
           << " (bound 1e-10); max FD-path residual = " << worst_fd << " (bound 1e-6)";
    return {"closed_form", worst_exact <= 1e-10 && worst_fd <= 1e-6, detail.str()};
}

SuiteResult suite_energy(const Suite& s) {
    std::mt19937_64 rng(s.seed + 606);
    double worst_rel = 0.0;
    bool nonneg = true;
    for (const GeometrySpec& geom : s.catalog()) {
        for (int trial = 0; trial < 200; ++trial) {
            const Jet2 jet = s.random_jet(rng, geom);
            const double L = eval_lagrangian(geom, jet);
            if (L < 0) nonneg = false;
            const Eigen::VectorXd T = tension(geom, jet);
            const double recon = T.squaredNorm() * volume_factor(geom, jet.t);
            worst_rel = std::max(worst_rel, std::abs(L - recon) / std::max(std::abs(L), 1e-30));
        }
    }
    // harmonic profiles carry zero energy
    double worst_zero = 0.0;
    {
        const GeometrySpec torus = GeometrySpec::torus_to_sphere(1);
        const Grid grid(0, 2 * M_PI, 64, BoundaryConditions::periodic());
        for (double c : {0.0, M_PI / 2, M_PI})
            worst_zero = std::max(
                worst_zero, std::abs(discrete_energy(torus, DiscreteFunction::constant(grid, c))));
    }
    {
        // quadratic-in-r harmonic profile of the Euclidean warped product
        const GeometrySpec geom = GeometrySpec::warped_product(
            3, 8.0, WarpFn::identity(), WarpFn::identity(), 1.0, 2.0);
        const int n = 48;
        const Grid grid(1.0, 2.0, n, BoundaryConditions::clamped(1.0, 4.0, 2.0, 4.0));
        Eigen::MatrixXd vals(n, 1);
        for (int i = 0; i < n; ++i) vals(i, 0) = grid.node(i) * grid.node(i);
        vals(0, 0) = 1.0;
        vals(n - 1, 0) = 4.0;
        worst_zero = std::max(worst_zero,
                              std::abs(discrete_energy(geom, DiscreteFunction(grid, vals))));
    }
    std::ostringstream detail;
    detail << "max relative |L - T^2 vol| = " << worst_rel
           << " (bound 1e-12); max harmonic energy = " << worst_zero << " (bound 1e-12)";
    return {"energy", nonneg && worst_rel <= 1e-12 && worst_zero <= 1e-12, detail.str()};
}

SuiteResult suite_sampson(const Suite&) {
    const SampsonReport r1 = sampson_analyze(1.0);
    const SampsonReport r4 = sampson_analyze(4.0);
    const double min_diff = std::abs(r1.alpha_min - r4.alpha_min);
    const double scale_diff = std::abs(r1.r0 * 1.0 - r4.r0 * 2.0);
    const double stat = std::max(std::abs(r1.derivative_at_r0), std::abs(r4.derivative_at_r0));
    const double res = std::max(r1.ode_residual_max, r4.ode_residual_max);
    const bool ok = r1.violates_principle && r4.violates_principle && min_diff <= 1e-9 &&
                    scale_diff <= 1e-9 && stat <= 1e-12 && res <= 1e-10 &&
                    r1.end_growth_margin > 0;
    std::ostringstream detail;
    detail << "alpha_min = " << r1.alpha_min << ", lambda-invariance diff = " << min_diff
           << ", r0*sqrt(lambda) drift = " << scale_diff << ", |alpha'(r0)| = " << stat
           << ", ode residual = " << res;
    return {"sampson", ok, detail.str()};
}

} // namespace

std::vector<std::string> all_suite_names() {
    return {"partials", "gradient", "hessian", "oracle", "closed_form", "energy", "sampson"};
}

std::vector<SuiteResult> run_verification(const VerifyOptions& opt) {
    if (!opt.inject_fault.empty() && opt.inject_fault != "partials")
        throw ConfigError("unknown fault '" + opt.inject_fault + "' (supported: partials)");

    Suite s;
    s.seed = opt.seed;
    s.corrupt_partials = opt.inject_fault == "partials";

    std::vector<std::string> selected = opt.suites.empty() ? all_suite_names() : opt.suites;
    const auto known = all_suite_names();
    for (const std::string& name : selected)
        if (std::find(known.begin(), known.end(), name) == known.end())
            throw ConfigError("unknown suite '" + name + "'");

    std::vector<SuiteResult> results;
    for (const std::string& name : selected) {
        if (name == "partials") results.push_back(suite_partials(s));
        else if (name == "gradient") results.push_back(suite_gradient(s));
        else if (name == "hessian") results.push_back(suite_hessian(s));
        else if (name == "oracle") results.push_back(suite_oracle(s));
        else if (name == "closed_form") results.push_back(suite_closed_form(s));
        else if (name == "energy") results.push_back(suite_energy(s));
        else if (name == "sampson") results.push_back(suite_sampson(s));
    }
    return results;
}

} // namespace biharm
