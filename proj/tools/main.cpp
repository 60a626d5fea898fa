// biharm: command-line surface for the fourth-order variational toolkit.
// One command = one process; outputs are CSV files and plain-text/JSON
// reports written atomically under the output directory.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "biharm/closed_form.hpp"
#include "biharm/config.hpp"
#include "biharm/csv.hpp"
#include "biharm/errors.hpp"
#include "biharm/solver.hpp"
#include "biharm/spline.hpp"
#include "biharm/stability.hpp"
#include "biharm/verify.hpp"

namespace {

using namespace biharm;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;
constexpr int kExitNoConvergence = 4;

fs::path resolve_out_dir(const std::string& flag_out, const RunConfig* cfg) {
    // BIHARM_OUT overrides both the flag and the config
    if (const char* env = std::getenv("BIHARM_OUT"); env && *env) return env;
    if (!flag_out.empty()) return flag_out;
    if (cfg) return cfg->out_dir;
    return "out";
}

double geometry_lambda(const RunConfig& cfg) {
    if (cfg.geometry_kind == "torus") return static_cast<double>(cfg.k) * cfg.k;
    return cfg.lambda;
}

std::vector<std::vector<double>> solution_rows(const GeometrySpec& geom,
                                               const DiscreteFunction& df) {
    const StencilRows s = build_stencils(df.grid, 0);
    const auto col = df.values.col(0);
    std::vector<std::vector<double>> rows;
    rows.reserve(df.n());
    for (int i = 0; i < df.n(); ++i) {
        const double p = s.p[i].apply(col), q = s.q[i].apply(col);
        const Jet2 jet = Jet2::scalar(s.t[i], col[i], p, q);
        rows.push_back({s.t[i], col[i], p, q, tension(geom, jet)[0]});
    }
    return rows;
}

DiscreteFunction load_solution(const GeometrySpec& geom, const RunConfig& cfg,
                               const fs::path& path) {
    const CsvTable table = read_csv(path);
    const int ct = table.column("t"), ca = table.column("alpha");
    if (ct < 0 || ca < 0) throw ConfigError("solution file needs 't' and 'alpha' columns");
    Grid grid = cfg.build_grid(geom);
    if (static_cast<int>(table.rows.size()) != grid.n)
        throw ConfigError("solution file row count does not match grid n");
    Eigen::MatrixXd vals(grid.n, 1);
    for (int i = 0; i < grid.n; ++i) vals(i, 0) = table.rows[i][ca];
    if (!grid.periodic()) {
        vals(0, 0) = grid.bc.value_a[0];
        vals(grid.n - 1, 0) = grid.bc.value_b[0];
    }
    return DiscreteFunction(grid, std::move(vals));
}

int cmd_residual(const RunConfig& cfg, const std::string& flag_out,
                 const std::string& solution_path) {
    const GeometrySpec geom = cfg.build_geometry();
    std::unique_ptr<SmoothCurve> curve;
    if (!solution_path.empty()) {
        curve = std::make_unique<QuinticSplineCurve>(load_solution(geom, cfg, solution_path));
    } else if (cfg.curve) {
        curve = cfg.curve->build(geometry_lambda(cfg));
    } else {
        throw ConfigError("residual needs a 'curve' block in the config or --solution");
    }

    const double fd = cfg.fd_step > 0 ? cfg.fd_step : default_fd_step(geom);
    const double a = geom.domain_a(), b = geom.domain_b();
    const double lo = geom.periodic() ? a : a + 2 * fd;
    const double hi = geom.periodic() ? b : b - 2 * fd;
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < cfg.samples; ++i) {
        const double t = lo + (hi - lo) * i / (cfg.samples - 1.0);
        rows.push_back({t, el_residual_along_curve(geom, *curve, t, fd)[0]});
    }
    const fs::path dir = resolve_out_dir(flag_out, &cfg);
    if (cfg.emit_csv) write_csv_atomic(dir / "residual.csv", "t,residual", rows);
    if (cfg.emit_report) {
        nlohmann::json rep;
        rep["config"] = resolved_json(cfg);
        double worst = 0;
        for (const auto& row : rows) worst = std::max(worst, std::abs(row[1]));
        rep["result"] = {{"max_abs_residual", worst}, {"samples", cfg.samples}};
        write_file_atomic(dir / "residual_report.json", rep.dump(2) + "\n");
    }
    std::cout << "residual: wrote " << rows.size() << " samples to "
              << (dir / "residual.csv").string() << "\n";
    return kExitOk;
}

int cmd_solve(const RunConfig& cfg, const std::string& flag_out) {
    const GeometrySpec geom = cfg.build_geometry();
    const DiscreteFunction initial = cfg.build_initial(geom);
    const SolveReport rep = solve(geom, initial, cfg.solver);

    const fs::path dir = resolve_out_dir(flag_out, &cfg);
    if (cfg.emit_csv)
        write_csv_atomic(dir / "solution.csv", "t,alpha,alpha_dot,alpha_ddot,tension",
                         solution_rows(geom, rep.solution));

    nlohmann::json out;
    out["config"] = resolved_json(cfg);
    nlohmann::json res;
    res["converged"] = rep.converged;
    res["iterations"] = rep.iterations;
    res["grad_norm"] = rep.grad_norm;
    res["energy"] = rep.energy;
    if (cfg.reference) {
        const auto ref = cfg.reference->build(geometry_lambda(cfg));
        double sup = 0;
        for (int i = 0; i < rep.solution.n(); ++i)
            sup = std::max(sup, std::abs(rep.solution.values(i, 0) -
                                         ref->value(rep.solution.grid.node(i))));
        res["sup_error_vs_reference"] = sup;
    }
    out["result"] = res;
    if (cfg.emit_report) write_file_atomic(dir / "report.json", out.dump(2) + "\n");

    std::cout << "solve: converged=" << (rep.converged ? "true" : "false")
              << " iterations=" << rep.iterations << " grad_norm=" << format_g17(rep.grad_norm)
              << " energy=" << format_g17(rep.energy) << "\n";
    return rep.converged ? kExitOk : kExitNoConvergence;
}

int cmd_stability(const RunConfig& cfg, const std::string& flag_out,
                  const std::string& solution_path) {
    if (solution_path.empty()) throw ConfigError("stability needs --solution <csv>");
    const GeometrySpec geom = cfg.build_geometry();
    const DiscreteFunction critical = load_solution(geom, cfg, solution_path);
    const StabilityReport rep = analyze_stability(geom, critical);

    const fs::path dir = resolve_out_dir(flag_out, &cfg);
    std::vector<std::vector<double>> eig_rows;
    for (int i = 0; i < rep.eigen_low.size(); ++i)
        eig_rows.push_back({static_cast<double>(i), rep.eigen_low[i]});
    if (cfg.emit_csv) write_csv_atomic(dir / "eigenvalues.csv", "index,eigenvalue", eig_rows);

    std::ostringstream txt;
    txt << "stability report\n";
    txt << "  geometry:        " << geom.name() << "\n";
    txt << "  classification:  " << to_string(rep.classification) << "\n";
    txt << "  pos_tol:         " << format_g17(rep.pos_tol) << "\n";
    txt << "  lowest eigenvalues:\n";
    for (int i = 0; i < rep.eigen_low.size(); ++i)
        txt << "    " << format_g17(rep.eigen_low[i]) << "\n";
    if (!rep.quad_form_checks.empty()) {
        txt << "  quadratic forms (direction, discrete, reference):\n";
        for (const QuadFormCheck& chk : rep.quad_form_checks) {
            txt << "    " << chk.label << "  " << format_g17(chk.discrete);
            if (chk.has_analytic) txt << "  " << format_g17(chk.analytic);
            txt << "\n";
        }
        txt << "  note: reference column lists the classical closed form\n"
               "  2*pi*(n^4 + k^4); the measured second variation of this\n"
               "  functional follows 2*pi*(n^4 - k^4) (see README).\n";
    }
    write_file_atomic(dir / "stability.txt", txt.str());
    std::cout << txt.str();
    return kExitOk;
}

int cmd_sampson(double lambda, const std::string& flag_out) {
    const SampsonReport rep = sampson_analyze(lambda);
    std::ostringstream txt;
    txt << "sampson analysis (lambda = " << format_g17(rep.lambda) << ")\n";
    txt << "  stationary point r0:   " << format_g17(rep.r0) << "\n";
    txt << "  absolute minimum:      " << format_g17(rep.alpha_min) << "\n";
    txt << "  |alpha'(r0)|:          " << format_g17(std::abs(rep.derivative_at_r0)) << "\n";
    txt << "  end growth margin:     " << format_g17(rep.end_growth_margin) << "\n";
    txt << "  max equation residual: " << format_g17(rep.ode_residual_max) << "\n";
    txt << "  minimum is strictly positive: " << (rep.violates_principle ? "yes" : "no") << "\n";
    txt << "  (a non-constant profile whose image stays on one side of a\n"
           "   sphere: the classical harmonic maximum principle fails here)\n";
    std::cout << txt.str();
    if (!flag_out.empty() || std::getenv("BIHARM_OUT")) {
        const fs::path dir = resolve_out_dir(flag_out, nullptr);
        write_file_atomic(dir / "sampson.txt", txt.str());
    }
    return kExitOk;
}

int cmd_verify(std::uint64_t seed, const std::string& suites, bool suites_given,
               const std::string& fault) {
    VerifyOptions opt;
    opt.seed = seed;
    opt.inject_fault = fault;
    if (suites_given) {
        if (suites.empty()) throw ConfigError("empty suite selection");
        std::istringstream ss(suites);
        std::string name;
        while (std::getline(ss, name, ',')) {
            if (!name.empty()) opt.suites.push_back(name);
        }
        if (opt.suites.empty()) throw ConfigError("empty suite selection");
    }
    const auto results = run_verification(opt);
    bool all_ok = true;
    for (const SuiteResult& r : results) {
        std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.name << ": " << r.detail << "\n";
        all_ok = all_ok && r.passed;
    }
    std::cout << (all_ok ? "verification passed" : "verification FAILED") << "\n";
    return all_ok ? kExitOk : kExitVerifyFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"biharm: reduced-bienergy toolkit for equivariant profiles"};
    app.require_subcommand(1);

    std::string config_path, out_dir, solution_path, suites, fault;
    std::uint64_t seed = 0;
    double lambda = 1.0;
    bool suites_given = false;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* copt = sub->add_option("--config", config_path, "JSON config file");
        if (needs_config) copt->required();
        sub->add_option("--out", out_dir, "output directory (BIHARM_OUT overrides)");
        sub->add_option("--seed", seed, "seed for randomized checks");
    };

    CLI::App* residual = app.add_subcommand("residual", "sample the critical-point residual");
    add_common(residual, true);
    residual->add_option("--solution", solution_path, "solution CSV to interpolate");

    CLI::App* solve_cmd = app.add_subcommand("solve", "find a discrete critical point");
    add_common(solve_cmd, true);

    CLI::App* stability = app.add_subcommand("stability", "classify a critical point");
    add_common(stability, true);
    stability->add_option("--solution", solution_path, "solution CSV to analyze");

    CLI::App* sampson = app.add_subcommand("sampson", "minimum analysis of the cylinder profile");
    sampson->add_option("--lambda", lambda, "eigenvalue (> 0)");
    sampson->add_option("--out", out_dir, "output directory (BIHARM_OUT overrides)");

    CLI::App* verify = app.add_subcommand("verify", "run the oracle suites");
    verify->add_option("--seed", seed, "seed for randomized checks");
    verify->add_option("--suite", suites, "comma-separated suite selection")
        ->trigger_on_parse()
        ->each([&](const std::string&) { suites_given = true; });
    verify->add_option("--inject-fault", fault, "mutation-test mode (partials)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (residual->parsed())
            return cmd_residual(load_config(config_path), out_dir, solution_path);
        if (solve_cmd->parsed()) return cmd_solve(load_config(config_path), out_dir);
        if (stability->parsed())
            return cmd_stability(load_config(config_path), out_dir, solution_path);
        if (sampson->parsed()) return cmd_sampson(lambda, out_dir);
        if (verify->parsed()) return cmd_verify(seed, suites, suites_given, fault);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFailure;
    }
    return kExitConfig;
}
