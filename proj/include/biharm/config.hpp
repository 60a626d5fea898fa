#pragma once

#include <array>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "biharm/curve.hpp"
#include "biharm/geometry.hpp"
#include "biharm/grid.hpp"
#include "biharm/solver.hpp"

namespace biharm {

/// Declarative description of a profile curve (for residual evaluation
/// and solution references).
struct CurveSpec {
    std::string kind;  // constant | fourier | sampson | exp_poly
    double value = 0.0;                       // constant
    double base = 0.0, amplitude = 0.0;       // fourier
    int mode = 1;                             // fourier
    std::vector<std::array<double, 3>> terms; // exp_poly: (coeff, power, rate)

    std::unique_ptr<SmoothCurve> build(double geometry_lambda) const;
};

/// One run = one JSON config document.  Unknown keys are rejected.
struct RunConfig {
    // geometry
    std::string geometry_kind;  // torus | warped_product | euclidean_log | cylinder
    int k = 1;
    int m = 1;
    double lambda = 1.0;
    std::string warp_f = "identity", warp_h = "identity";
    double warp_f_const = 1.0, warp_h_const = 1.0;
    double domain_a = 0.0, domain_b = 1.0;

    // grid
    int n = 256;
    std::string bc_kind;  // periodic | clamped
    double value_a = 0.0, value_b = 0.0, slope_a = 0.0, slope_b = 0.0;

    SolveConfig solver;

    // initial guess
    std::string initial_kind = "constant";  // constant | fourier | linear | file
    double initial_value = 0.0;
    double initial_base = 0.0, initial_amplitude = 0.0;
    int initial_mode = 1;
    std::string initial_file;

    // output
    std::string out_dir = "out";
    bool emit_csv = true;
    bool emit_report = true;

    std::optional<CurveSpec> curve;      // residual input
    std::optional<CurveSpec> reference;  // error reporting in solve
    int samples = 201;                   // residual sample count
    double fd_step = 0.0;                // residual time step; 0 = 1e-3 * (b - a)

    GeometrySpec build_geometry() const;
    Grid build_grid(const GeometrySpec& geom) const;
    DiscreteFunction build_initial(const GeometrySpec& geom) const;
};

/// Parses a config document; also accepts a report document that embeds
/// the resolved config under a "config" key.  Throws ConfigError on any
/// unknown key, wrong type, or invalid combination.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

/// Fully-resolved config (all defaults spelled out) for embedding into
/// reports; parse_config(resolved_json(cfg)) reproduces cfg.
nlohmann::json resolved_json(const RunConfig& cfg);

} // namespace biharm
