#include "biharm/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "biharm/closed_form.hpp"
#include "biharm/csv.hpp"
#include "biharm/errors.hpp"

namespace biharm {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& known,
                    const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!known.count(it.key()))
            throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

template <class T>
T require(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw ConfigError("missing key '" + key + "' in " + where);
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("key '" + key + "' in " + where + " has the wrong type");
    }
}

template <class T>
T optional_or(const json& obj, const std::string& key, const std::string& where, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("key '" + key + "' in " + where + " has the wrong type");
    }
}

WarpFn warp_from(const std::string& name, double c) {
    if (name == "identity") return WarpFn::identity();
    if (name == "sine") return WarpFn::sine();
    if (name == "hyperbolic_sine") return WarpFn::hyperbolic_sine();
    if (name == "constant") return WarpFn::constant(c);
    throw ConfigError("unknown warp kind '" + name + "'");
}

CurveSpec parse_curve(const json& obj, const std::string& where) {
    reject_unknown(obj, {"kind", "value", "base", "amplitude", "mode", "terms"}, where);
    CurveSpec c;
    c.kind = require<std::string>(obj, "kind", where);
    if (c.kind == "constant") {
        c.value = require<double>(obj, "value", where);
    } else if (c.kind == "fourier") {
        c.base = require<double>(obj, "base", where);
        c.amplitude = require<double>(obj, "amplitude", where);
        c.mode = require<int>(obj, "mode", where);
    } else if (c.kind == "sampson") {
        // profile is determined by the geometry's lambda
    } else if (c.kind == "exp_poly") {
        if (!obj.contains("terms") || !obj.at("terms").is_array())
            throw ConfigError("exp_poly curve needs a 'terms' array in " + where);
        for (const auto& t : obj.at("terms")) {
            if (!t.is_array() || t.size() != 3)
                throw ConfigError("exp_poly terms are [coeff, power, rate] triples");
            c.terms.push_back({t[0].get<double>(), t[1].get<double>(), t[2].get<double>()});
        }
    } else {
        throw ConfigError("unknown curve kind '" + c.kind + "' in " + where);
    }
    return c;
}

json curve_json(const CurveSpec& c) {
    json obj;
    obj["kind"] = c.kind;
    if (c.kind == "constant") obj["value"] = c.value;
    if (c.kind == "fourier") {
        obj["base"] = c.base;
        obj["amplitude"] = c.amplitude;
        obj["mode"] = c.mode;
    }
    if (c.kind == "exp_poly") {
        json terms = json::array();
        for (const auto& t : c.terms) terms.push_back({t[0], t[1], t[2]});
        obj["terms"] = terms;
    }
    return obj;
}

} // namespace

std::unique_ptr<SmoothCurve> CurveSpec::build(double geometry_lambda) const {
    if (kind == "constant") return std::make_unique<ConstantCurve>(value);
    if (kind == "fourier") return std::make_unique<FourierCurve>(base, amplitude, mode);
    if (kind == "sampson") {
        const double s = std::sqrt(geometry_lambda);
        return std::make_unique<ExpPolySolution>(std::vector<ExpPolyTerm>{
            {1.0, 0, s}, {0.5 * s, 1, s}, {-0.5 * s, 1, -s}});
    }
    if (kind == "exp_poly") {
        std::vector<ExpPolyTerm> ts;
        for (const auto& t : terms) {
            if (t[1] < 0 || t[1] != std::floor(t[1]))
                throw ConfigError("exp_poly powers must be nonnegative integers");
            ts.push_back({t[0], static_cast<int>(t[1]), t[2]});
        }
        return std::make_unique<ExpPolySolution>(std::move(ts));
    }
    throw ConfigError("unknown curve kind '" + kind + "'");
}

GeometrySpec RunConfig::build_geometry() const {
    if (geometry_kind == "torus") return GeometrySpec::torus_to_sphere(k);
    if (geometry_kind == "warped_product")
        return GeometrySpec::warped_product(m, lambda, warp_from(warp_f, warp_f_const),
                                            warp_from(warp_h, warp_h_const), domain_a, domain_b);
    if (geometry_kind == "euclidean_log")
        return GeometrySpec::euclidean_log(m, lambda, domain_a, domain_b);
    if (geometry_kind == "cylinder")
        return GeometrySpec::cylinder(lambda, domain_a, domain_b);
    throw ConfigError("unknown geometry kind '" + geometry_kind + "'");
}

Grid RunConfig::build_grid(const GeometrySpec& geom) const {
    const bool want_periodic = bc_kind == "periodic";
    if (geom.periodic() != want_periodic)
        throw ConfigError(geom.periodic() ? "this geometry requires periodic boundary conditions"
                                          : "this geometry requires clamped boundary conditions");
    BoundaryConditions bc = want_periodic
                                ? BoundaryConditions::periodic()
                                : BoundaryConditions::clamped(value_a, value_b, slope_a, slope_b);
    return Grid(geom.domain_a(), geom.domain_b(), n, std::move(bc));
}

DiscreteFunction RunConfig::build_initial(const GeometrySpec& geom) const {
    const Grid grid = build_grid(geom);
    if (initial_kind == "constant") {
        DiscreteFunction df = DiscreteFunction::constant(grid, initial_value);
        if (!grid.periodic()) {
            df.values(0, 0) = grid.bc.value_a[0];
            df.values(grid.n - 1, 0) = grid.bc.value_b[0];
        }
        return df;
    }
    if (initial_kind == "fourier") {
        DiscreteFunction df =
            DiscreteFunction::fourier(grid, initial_base, initial_amplitude, initial_mode);
        if (!grid.periodic()) {
            df.values(0, 0) = grid.bc.value_a[0];
            df.values(grid.n - 1, 0) = grid.bc.value_b[0];
        }
        return df;
    }
    if (initial_kind == "linear") return DiscreteFunction::linear(grid);
    if (initial_kind == "file") {
        const CsvTable table = read_csv(initial_file);
        const int ct = table.column("t"), ca = table.column("alpha");
        if (ct < 0 || ca < 0)
            throw ConfigError("initial profile file needs 't' and 'alpha' columns");
        if (static_cast<int>(table.rows.size()) != grid.n)
            throw ConfigError("initial profile file has " + std::to_string(table.rows.size()) +
                              " rows; grid expects " + std::to_string(grid.n));
        Eigen::MatrixXd vals(grid.n, 1);
        for (int i = 0; i < grid.n; ++i) {
            if (std::abs(table.rows[i][ct] - grid.node(i)) > 1e-9 * (1 + std::abs(grid.node(i))))
                throw ConfigError("initial profile nodes do not match the grid");
            vals(i, 0) = table.rows[i][ca];
        }
        if (!grid.periodic()) {
            vals(0, 0) = grid.bc.value_a[0];
            vals(grid.n - 1, 0) = grid.bc.value_b[0];
        }
        return DiscreteFunction(grid, std::move(vals));
    }
    throw ConfigError("unknown initial kind '" + initial_kind + "'");
}

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config document must be a JSON object");
    // accept a report that embeds the resolved config
    if (doc.contains("config")) return parse_config(doc.at("config"));

    reject_unknown(doc, {"geometry", "grid", "solver", "initial", "output", "curve",
                         "reference", "samples", "fd_step"}, "config");
    RunConfig cfg;

    const json geo = require<json>(doc, "geometry", "config");
    reject_unknown(geo, {"kind", "k", "m", "lambda", "f", "h", "f_const", "h_const", "domain"},
                   "geometry");
    cfg.geometry_kind = require<std::string>(geo, "kind", "geometry");
    if (cfg.geometry_kind == "torus") {
        cfg.k = require<int>(geo, "k", "geometry");
        cfg.domain_a = 0.0;
        cfg.domain_b = 2 * M_PI;
    } else {
        if (cfg.geometry_kind == "warped_product" || cfg.geometry_kind == "euclidean_log")
            cfg.m = require<int>(geo, "m", "geometry");
        cfg.lambda = require<double>(geo, "lambda", "geometry");
        const json dom = require<json>(geo, "domain", "geometry");
        if (!dom.is_array() || dom.size() != 2)
            throw ConfigError("geometry domain must be [a, b]");
        cfg.domain_a = dom[0].get<double>();
        cfg.domain_b = dom[1].get<double>();
        if (cfg.geometry_kind == "warped_product") {
            cfg.warp_f = optional_or<std::string>(geo, "f", "geometry", "identity");
            cfg.warp_h = optional_or<std::string>(geo, "h", "geometry", "identity");
            cfg.warp_f_const = optional_or<double>(geo, "f_const", "geometry", 1.0);
            cfg.warp_h_const = optional_or<double>(geo, "h_const", "geometry", 1.0);
        }
    }

    const json grid = require<json>(doc, "grid", "config");
    reject_unknown(grid, {"n", "bc"}, "grid");
    cfg.n = require<int>(grid, "n", "grid");
    const json bc = require<json>(grid, "bc", "grid");
    reject_unknown(bc, {"kind", "value_a", "value_b", "slope_a", "slope_b"}, "bc");
    cfg.bc_kind = require<std::string>(bc, "kind", "bc");
    if (cfg.bc_kind == "clamped") {
        cfg.value_a = require<double>(bc, "value_a", "bc");
        cfg.value_b = require<double>(bc, "value_b", "bc");
        cfg.slope_a = require<double>(bc, "slope_a", "bc");
        cfg.slope_b = require<double>(bc, "slope_b", "bc");
    } else if (cfg.bc_kind != "periodic") {
        throw ConfigError("bc kind must be 'periodic' or 'clamped'");
    }

    if (doc.contains("solver")) {
        const json sv = doc.at("solver");
        reject_unknown(sv, {"max_iter", "grad_tol", "damping", "regularization"}, "solver");
        cfg.solver.max_iter = optional_or<int>(sv, "max_iter", "solver", cfg.solver.max_iter);
        cfg.solver.grad_tol = optional_or<double>(sv, "grad_tol", "solver", cfg.solver.grad_tol);
        cfg.solver.damping = optional_or<double>(sv, "damping", "solver", cfg.solver.damping);
        cfg.solver.regularization =
            optional_or<double>(sv, "regularization", "solver", cfg.solver.regularization);
    }

    if (doc.contains("initial")) {
        const json ini = doc.at("initial");
        reject_unknown(ini, {"kind", "value", "base", "amplitude", "mode", "path"}, "initial");
        cfg.initial_kind = require<std::string>(ini, "kind", "initial");
        if (cfg.initial_kind == "constant")
            cfg.initial_value = require<double>(ini, "value", "initial");
        else if (cfg.initial_kind == "fourier") {
            cfg.initial_base = require<double>(ini, "base", "initial");
            cfg.initial_amplitude = require<double>(ini, "amplitude", "initial");
            cfg.initial_mode = require<int>(ini, "mode", "initial");
        } else if (cfg.initial_kind == "file")
            cfg.initial_file = require<std::string>(ini, "path", "initial");
        else if (cfg.initial_kind != "linear")
            throw ConfigError("unknown initial kind '" + cfg.initial_kind + "'");
    }

    if (doc.contains("output")) {
        const json out = doc.at("output");
        reject_unknown(out, {"directory", "emit_csv", "emit_report"}, "output");
        cfg.out_dir = optional_or<std::string>(out, "directory", "output", cfg.out_dir);
        cfg.emit_csv = optional_or<bool>(out, "emit_csv", "output", cfg.emit_csv);
        cfg.emit_report = optional_or<bool>(out, "emit_report", "output", cfg.emit_report);
    }

    if (doc.contains("curve")) cfg.curve = parse_curve(doc.at("curve"), "curve");
    if (doc.contains("reference")) cfg.reference = parse_curve(doc.at("reference"), "reference");
    cfg.samples = optional_or<int>(doc, "samples", "config", cfg.samples);
    if (cfg.samples < 2) throw ConfigError("samples must be >= 2");
    cfg.fd_step = optional_or<double>(doc, "fd_step", "config", cfg.fd_step);
    if (cfg.fd_step < 0) throw ConfigError("fd_step must be positive (or omitted)");

    // validate eagerly: a malformed config should fail before any work
    const GeometrySpec geom = cfg.build_geometry();
    (void)cfg.build_grid(geom);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
    return parse_config(doc);
}

nlohmann::json resolved_json(const RunConfig& cfg) {
    json geo;
    geo["kind"] = cfg.geometry_kind;
    if (cfg.geometry_kind == "torus") {
        geo["k"] = cfg.k;
    } else {
        if (cfg.geometry_kind != "cylinder") geo["m"] = cfg.m;
        geo["lambda"] = cfg.lambda;
        geo["domain"] = {cfg.domain_a, cfg.domain_b};
        if (cfg.geometry_kind == "warped_product") {
            geo["f"] = cfg.warp_f;
            geo["h"] = cfg.warp_h;
            geo["f_const"] = cfg.warp_f_const;
            geo["h_const"] = cfg.warp_h_const;
        }
    }

    json bc;
    bc["kind"] = cfg.bc_kind;
    if (cfg.bc_kind == "clamped") {
        bc["value_a"] = cfg.value_a;
        bc["value_b"] = cfg.value_b;
        bc["slope_a"] = cfg.slope_a;
        bc["slope_b"] = cfg.slope_b;
    }

    json ini;
    ini["kind"] = cfg.initial_kind;
    if (cfg.initial_kind == "constant") ini["value"] = cfg.initial_value;
    if (cfg.initial_kind == "fourier") {
        ini["base"] = cfg.initial_base;
        ini["amplitude"] = cfg.initial_amplitude;
        ini["mode"] = cfg.initial_mode;
    }
    if (cfg.initial_kind == "file") ini["path"] = cfg.initial_file;

    json doc;
    doc["geometry"] = geo;
    doc["grid"] = {{"n", cfg.n}, {"bc", bc}};
    doc["solver"] = {{"max_iter", cfg.solver.max_iter},
                     {"grad_tol", cfg.solver.grad_tol},
                     {"damping", cfg.solver.damping},
                     {"regularization", cfg.solver.regularization}};
    doc["initial"] = ini;
    doc["output"] = {{"directory", cfg.out_dir},
                     {"emit_csv", cfg.emit_csv},
                     {"emit_report", cfg.emit_report}};
    if (cfg.curve) doc["curve"] = curve_json(*cfg.curve);
    if (cfg.reference) doc["reference"] = curve_json(*cfg.reference);
    doc["samples"] = cfg.samples;
    if (cfg.fd_step > 0) doc["fd_step"] = cfg.fd_step;
    return doc;
}

} // namespace biharm
