// spectral-bounds: eigenvalue lower bounds from 1-D comparison problems.
//
// Subcommands:
//   bound     one eigenvalue bound (consensus or single method) + explicit bound
//   sweep     tabulate bounds over a D or kappa grid (CSV/JSON)
//   heat      run the 1-D comparison flow and report the fitted decay rate
//   validate  run the oracle/invariant suite
//
// Exit codes: 0 ok, 1 validation failure, 2 usage error, 3 numeric failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <spectral_bounds/spectral_bounds.hpp>
#include <spectral_bounds/validation.hpp>

namespace sb = spectral_bounds;
using nlohmann::json;

namespace {

json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

struct GeometryFlags {
    std::string cls;
    int n = 0, m = 0;
    double kappa = 0.0, kappa1 = 0.0, kappa2 = 0.0;
    bool has_kappa = false, has_kappa1 = false, has_kappa2 = false;
    double diameter = 0.0, inradius = 0.0;
    bool has_diameter = false, has_inradius = false;
    double lambda = 0.0;
    bool has_lambda = false;
    bool dirichlet = false;
    bool singular_limit = false;

    CLI::Option *opt_kappa = nullptr, *opt_kappa1 = nullptr,
                *opt_kappa2 = nullptr, *opt_diameter = nullptr,
                *opt_inradius = nullptr, *opt_lambda = nullptr;

    void resolve() {
        has_kappa = opt_kappa && opt_kappa->count() > 0;
        has_kappa1 = opt_kappa1 && opt_kappa1->count() > 0;
        has_kappa2 = opt_kappa2 && opt_kappa2->count() > 0;
        has_diameter = opt_diameter && opt_diameter->count() > 0;
        has_inradius = opt_inradius && opt_inradius->count() > 0;
        has_lambda = opt_lambda && opt_lambda->count() > 0;
    }
};

void add_geometry_flags(CLI::App* cmd, GeometryFlags& g) {
    cmd->add_option("class", g.cls, "geometry class")
        ->required()
        ->check(CLI::IsMember({"riemannian", "kahler", "qk"}));
    cmd->add_option("--n", g.n, "real dimension n (riemannian)");
    cmd->add_option("--m", g.m, "complex/quaternionic dimension m");
    g.opt_kappa =
        cmd->add_option("--kappa", g.kappa, "curvature normalization kappa");
    g.opt_kappa1 = cmd->add_option(
        "--kappa1", g.kappa1, "holomorphic sectional bound / 4 (kahler)");
    g.opt_kappa2 = cmd->add_option(
        "--kappa2", g.kappa2, "orthogonal Ricci bound / 2(m-1) (kahler)");
    g.opt_diameter = cmd->add_option("--diameter", g.diameter,
                                     "diameter D (Neumann problems)");
    g.opt_inradius = cmd->add_option("--inradius", g.inradius,
                                     "inradius R (Dirichlet problems)");
    g.opt_lambda = cmd->add_option(
        "--lambda", g.lambda, "boundary convexity Lambda (Dirichlet)");
    g.opt_diameter->excludes(g.opt_inradius);
    cmd->add_flag("--dirichlet", g.dirichlet,
                  "solve the Dirichlet/Neumann problem on [0, R]");
    cmd->add_flag("--singular-limit", g.singular_limit,
                  "admit an interval reaching the drift singularity");
}

sb::GeometryInput make_geometry(const GeometryFlags& f, double extent) {
    sb::GeometryInput g;
    if (f.cls == "riemannian") {
        if (f.n < 1)
            throw std::invalid_argument("riemannian geometry requires --n");
        if (!f.has_kappa)
            throw std::invalid_argument("riemannian geometry requires --kappa");
        g = sb::GeometryInput::riemannian(f.n, f.kappa, extent);
    } else if (f.cls == "kahler") {
        if (f.m < 1)
            throw std::invalid_argument("kahler geometry requires --m");
        double kk1 = f.kappa1, kk2 = f.kappa2;
        if (!f.has_kappa1 && !f.has_kappa2) {
            if (!f.has_kappa)
                throw std::invalid_argument(
                    "kahler geometry requires --kappa1/--kappa2 (or --kappa "
                    "for both)");
            kk1 = kk2 = f.kappa;
        } else if (!f.has_kappa1 || !f.has_kappa2) {
            throw std::invalid_argument(
                "kahler geometry requires both --kappa1 and --kappa2");
        }
        g = sb::GeometryInput::kahler(f.m, kk1, kk2, extent);
    } else {
        if (f.m < 2)
            throw std::invalid_argument("qk geometry requires --m >= 2");
        if (!f.has_kappa)
            throw std::invalid_argument("qk geometry requires --kappa");
        g = sb::GeometryInput::quaternion_kahler(f.m, f.kappa, extent);
    }
    g.singular_limit = f.singular_limit;
    return g;
}

// explicit closed-form bound where the proposition hypotheses hold
std::optional<double> explicit_bound_for(const sb::GeometryInput& g,
                                         double diameter) {
    try {
        switch (g.cls) {
        case sb::GeometryClass::riemannian:
            return std::nullopt; // paper states the Kahler/qk propositions
        case sb::GeometryClass::kahler:
            if (g.kappa1 < 0.0 || g.kappa2 < 0.0) return std::nullopt;
            return sb::explicit_bound_kahler(g.dim, g.kappa1, g.kappa2,
                                             diameter);
        case sb::GeometryClass::quaternion_kahler:
            if (g.kappa1 < 0.0) return std::nullopt;
            return sb::explicit_bound_qk(g.dim, g.kappa1, diameter);
        }
    } catch (const std::exception&) {
        return std::nullopt;
    }
    return std::nullopt;
}

json geometry_inputs_json(const GeometryFlags& f) {
    json j;
    j["class"] = f.cls;
    if (f.cls == "riemannian")
        j["n"] = f.n;
    else
        j["m"] = f.m;
    if (f.has_kappa) j["kappa"] = num(f.kappa);
    if (f.has_kappa1) j["kappa1"] = num(f.kappa1);
    if (f.has_kappa2) j["kappa2"] = num(f.kappa2);
    if (f.has_diameter) j["diameter"] = num(f.diameter);
    if (f.has_inradius) j["inradius"] = num(f.inradius);
    if (f.has_lambda) j["lambda"] = num(f.lambda);
    j["dirichlet"] = f.dirichlet;
    j["singular_limit"] = f.singular_limit;
    return j;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file " + out_path);
    os << text;
}

std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct CommonFlags {
    std::string output = "table";
    std::string out_path;
    double rel_tol = 1e-10;
    int nodes = 256;
    unsigned seed = 12345;
};

void add_common_flags(CLI::App* cmd, CommonFlags& c) {
    cmd->add_option("--output", c.output, "output format")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    cmd->add_option("--out", c.out_path, "write output to a file");
    cmd->add_option("--rel-tol", c.rel_tol, "shooting relative tolerance");
    cmd->add_option("--nodes", c.nodes, "coarsest FD mesh size");
    cmd->add_option("--seed", c.seed, "seed for randomized property suites");
}

sb::SolverConfig solver_config(const CommonFlags& c) {
    sb::SolverConfig cfg;
    cfg.rel_tol = c.rel_tol;
    cfg.base_nodes = c.nodes;
    return cfg;
}

// ---------------------------------------------------------------- cmd bound

int cmd_bound(const GeometryFlags& gf, const CommonFlags& cf,
              const std::string& method) {
    const bool dirichlet = gf.dirichlet || gf.has_inradius;
    if (dirichlet) {
        if (!gf.has_inradius || !gf.has_lambda)
            throw std::invalid_argument(
                "dirichlet bound requires --inradius and --lambda");
        if (gf.has_diameter)
            throw std::invalid_argument(
                "--diameter conflicts with a dirichlet bound");
    } else {
        if (!gf.has_diameter)
            throw std::invalid_argument("neumann bound requires --diameter");
        if (gf.has_lambda)
            throw std::invalid_argument(
                "--lambda requires --dirichlet/--inradius");
    }
    const double extent = dirichlet ? gf.inradius : gf.diameter;
    sb::GeometryInput g = make_geometry(gf, extent);
    if (dirichlet) g.convexity = gf.lambda;
    const sb::ComparisonProblem prob =
        dirichlet ? sb::dirichlet_problem(g) : sb::neumann_problem(g);
    const sb::SolverConfig cfg = solver_config(cf);
    sb::EigenResult res;
    if (method == "shooting")
        res = sb::solve_shooting(prob, cfg);
    else if (method == "fd")
        res = sb::solve_weighted_fd(prob, cfg);
    else
        res = sb::solve(prob, cfg);
    const std::optional<double> explicit_opt =
        dirichlet ? std::nullopt : explicit_bound_for(g, gf.diameter);
    const bool has_explicit = explicit_opt.has_value();
    const double explicit_value = explicit_opt.value_or(0.0);
    const bool checks_ok =
        !has_explicit ||
        explicit_value <= res.lambda + res.error_bracket + 1e-12;

    json j;
    j["command"] = "bound";
    j["inputs"] = geometry_inputs_json(gf);
    j["inputs"]["method"] = method;
    j["inputs"]["rel_tol"] = num(cf.rel_tol);
    j["inputs"]["nodes"] = cf.nodes;
    j["inputs"]["seed"] = cf.seed;
    j["results"]["lambda"] = num(res.lambda);
    j["results"]["bracket"] = num(res.error_bracket);
    j["results"]["explicit_bound"] =
        has_explicit ? num(explicit_value) : json(nullptr);
    j["results"]["method"] = sb::to_string(res.method);
    j["results"]["singular_limit"] = res.singular_limit;
    j["checks"] = json::array();
    if (has_explicit) {
        json c;
        c["name"] = "explicit_le_numeric";
        c["pass"] = checks_ok;
        c["measured"] = num(explicit_value);
        c["expected"] = num(res.lambda);
        c["detail"] = "closed-form bound must not exceed numeric + bracket";
        j["checks"].push_back(c);
    }

    if (cf.output == "json") {
        write_output(j.dump(2) + "\n", cf.out_path);
    } else if (cf.output == "csv") {
        std::string s = "lambda,bracket,explicit_bound,method,singular_limit\n";
        s += csv_num(res.lambda) + "," + csv_num(res.error_bracket) + "," +
             (has_explicit ? csv_num(explicit_value) : std::string()) +
             "," + sb::to_string(res.method) + "," +
             (res.singular_limit ? "true" : "false") + "\n";
        write_output(s, cf.out_path);
    } else {
        char buf[256];
        std::string s;
        std::snprintf(buf, sizeof buf, "lambda          %.12g\n", res.lambda);
        s += buf;
        std::snprintf(buf, sizeof buf, "bracket         %.3g\n",
                      res.error_bracket);
        s += buf;
        if (has_explicit) {
            std::snprintf(buf, sizeof buf, "explicit_bound  %.12g (%s)\n",
                          explicit_value,
                          checks_ok ? "<= numeric, ok" : "EXCEEDS numeric");
            s += buf;
        }
        std::snprintf(buf, sizeof buf, "method          %s\n",
                      sb::to_string(res.method));
        s += buf;
        std::snprintf(buf, sizeof buf, "singular_limit  %s\n",
                      res.singular_limit ? "true" : "false");
        s += buf;
        write_output(s, cf.out_path);
    }
    return checks_ok ? 0 : 1;
}

// ---------------------------------------------------------------- cmd sweep

int cmd_sweep(const GeometryFlags& gf, const CommonFlags& cf,
              const std::string& param, double from, double to, int points) {
    if (points < 2) throw std::invalid_argument("--points must be >= 2");
    if (!(from > 0.0) || !(to > from))
        throw std::invalid_argument("sweep range must satisfy 0 < from < to");
    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i)
        grid[i] = from + i * (to - from) / (points - 1);

    struct Row {
        double param;
        bool ok = false;
        double lambda = 0, bracket = 0;
        std::optional<double> explicit_bound;
        bool singular = false;
        std::string error;
    };
    std::vector<Row> rows(points);

    const bool dirichlet = gf.dirichlet || gf.has_inradius;
    if (dirichlet && !gf.has_lambda)
        throw std::invalid_argument(
            "dirichlet sweep requires --lambda (and the swept extent is the "
            "inradius)");

    if (param == "D") {
        if (gf.has_diameter || gf.has_inradius)
            throw std::invalid_argument(
                "extent sweep takes its grid from --from/--to; drop "
                "--diameter/--inradius");
        sb::GeometryInput family = make_geometry(gf, grid.front());
        if (dirichlet) family.convexity = gf.lambda;
        const auto curve = sb::eigenvalue_curve(family, grid,
                                                solver_config(cf));
        for (int i = 0; i < points; ++i) {
            rows[i].param = grid[i];
            rows[i].ok = curve[i].ok;
            rows[i].error = curve[i].error;
            if (curve[i].ok) {
                rows[i].lambda = curve[i].result.lambda;
                rows[i].bracket = curve[i].result.error_bracket;
                rows[i].singular = curve[i].result.singular_limit;
                if (!dirichlet) {
                    sb::GeometryInput g = family;
                    g.extent = grid[i];
                    rows[i].explicit_bound = explicit_bound_for(g, grid[i]);
                }
            }
        }
    } else if (param == "kappa") {
        const double extent = dirichlet ? gf.inradius : gf.diameter;
        if (dirichlet ? !gf.has_inradius : !gf.has_diameter)
            throw std::invalid_argument(
                "kappa sweep requires a fixed --diameter (or --inradius "
                "with --lambda)");
        for (int i = 0; i < points; ++i) {
            rows[i].param = grid[i];
            try {
                GeometryFlags f = gf;
                f.kappa = grid[i];
                f.has_kappa = true;
                f.has_kappa1 = f.has_kappa2 = false;
                sb::GeometryInput g = make_geometry(f, extent);
                sb::EigenResult res;
                if (dirichlet) {
                    g.convexity = gf.lambda;
                    res = sb::solve(sb::dirichlet_problem(g),
                                    solver_config(cf));
                } else {
                    res = sb::solve(sb::neumann_problem(g),
                                    solver_config(cf));
                    rows[i].explicit_bound = explicit_bound_for(g, extent);
                }
                rows[i].ok = true;
                rows[i].lambda = res.lambda;
                rows[i].bracket = res.error_bracket;
                rows[i].singular = res.singular_limit;
            } catch (const std::exception& e) {
                rows[i].error = e.what();
            }
        }
    } else {
        throw std::invalid_argument("--param must be D or kappa");
    }

    json j;
    j["command"] = "sweep";
    j["inputs"] = geometry_inputs_json(gf);
    j["inputs"]["param"] = param;
    j["inputs"]["from"] = num(from);
    j["inputs"]["to"] = num(to);
    j["inputs"]["points"] = points;
    j["inputs"]["rel_tol"] = num(cf.rel_tol);
    j["inputs"]["nodes"] = cf.nodes;
    j["inputs"]["seed"] = cf.seed;
    j["results"]["rows"] = json::array();
    int ok_count = 0;
    std::string csv = "param,lambda,bracket,explicit_bound,singular_limit,error\n";
    for (const auto& r : rows) {
        ok_count += r.ok;
        json row;
        row["param"] = num(r.param);
        row["lambda"] = r.ok ? num(r.lambda) : json(nullptr);
        row["bracket"] = r.ok ? num(r.bracket) : json(nullptr);
        row["explicit_bound"] =
            r.explicit_bound ? num(*r.explicit_bound) : json(nullptr);
        row["singular_limit"] = r.singular;
        row["error"] = r.error;
        j["results"]["rows"].push_back(row);
        csv += csv_num(r.param) + ",";
        csv += (r.ok ? csv_num(r.lambda) : std::string()) + ",";
        csv += (r.ok ? csv_num(r.bracket) : std::string()) + ",";
        csv += (r.explicit_bound ? csv_num(*r.explicit_bound) : std::string()) +
               ",";
        csv += std::string(r.singular ? "true" : "false") + ",";
        csv += r.error + "\n";
    }
    j["results"]["succeeded"] = ok_count;
    j["results"]["total"] = points;
    j["checks"] = json::array();

    if (cf.output == "json")
        write_output(j.dump(2) + "\n", cf.out_path);
    else
        write_output(csv, cf.out_path); // table == csv for sweeps
    return (10 * ok_count >= 9 * points) ? 0 : 3;
}

// ----------------------------------------------------------------- cmd heat

int cmd_heat(const GeometryFlags& gf, const CommonFlags& cf,
             const std::string& preset, double p_exponent, double eps,
             double horizon, int flow_nodes, double dt,
             const std::string& dump_path) {
    if (!gf.has_diameter)
        throw std::invalid_argument("heat requires --diameter");
    sb::GeometryInput g = make_geometry(gf, gf.diameter);
    const auto prob = sb::neumann_problem(g);
    sb::FlowCoefficients coeffs =
        preset == "heat" ? sb::FlowCoefficients::heat()
        : preset == "p"  ? sb::FlowCoefficients::p_flow(p_exponent, eps)
                         : sb::FlowCoefficients::graphical_mcf();
    auto initial = [&](double s) { return s; };

    sb::DecayOptions dopt;
    dopt.nodes = flow_nodes;
    dopt.dt = dt;
    dopt.solver = solver_config(cf);
    const auto rep = sb::decay_rate(coeffs, prob, initial, horizon, dopt);

    if (!dump_path.empty()) {
        sb::FlowState st =
            sb::make_flow_state(prob.half_length, flow_nodes, initial);
        const double step_dt =
            dt > 0.0 ? dt : sb::suggested_dt(st, coeffs);
        std::vector<sb::FlowState> snaps{st};
        const double snap_every = horizon / 64.0;
        double next = snap_every;
        sb::evolve(st, coeffs, prob.drift, horizon, step_dt,
                   [&](const sb::FlowState& s) {
                       if (s.time >= next) {
                           snaps.push_back(s);
                           next += snap_every;
                       }
                   });
        std::ofstream os(dump_path, std::ios::binary);
        if (!os)
            throw std::runtime_error("cannot open dump file " + dump_path);
        sb::dump_trajectory_csv(os, snaps);
    }

    json j;
    j["command"] = "heat";
    j["inputs"] = geometry_inputs_json(gf);
    j["inputs"]["preset"] = preset;
    if (preset == "p") {
        j["inputs"]["p"] = num(p_exponent);
        j["inputs"]["eps"] = num(eps);
    }
    j["inputs"]["horizon"] = num(horizon);
    j["inputs"]["flow_nodes"] = flow_nodes;
    j["inputs"]["seed"] = cf.seed;
    j["results"]["rate"] = num(rep.rate);
    j["results"]["window"] = {num(rep.window_start), num(rep.window_end)};
    j["results"]["r_squared"] = num(rep.r_squared);
    j["results"]["reference_lambda"] = num(rep.reference_lambda);
    j["checks"] = json::array();

    if (cf.output == "json") {
        write_output(j.dump(2) + "\n", cf.out_path);
    } else {
        char buf[128];
        std::string s;
        std::snprintf(buf, sizeof buf, "rate              %.10g\n", rep.rate);
        s += buf;
        std::snprintf(buf, sizeof buf, "reference_lambda  %.10g\n",
                      rep.reference_lambda);
        s += buf;
        std::snprintf(buf, sizeof buf, "window            [%.4g, %.4g]\n",
                      rep.window_start, rep.window_end);
        s += buf;
        std::snprintf(buf, sizeof buf, "r_squared         %.8f\n",
                      rep.r_squared);
        s += buf;
        write_output(s, cf.out_path);
    }
    return 0;
}

// ------------------------------------------------------------- cmd validate

int cmd_validate(const CommonFlags& cf, const std::vector<std::string>& only,
                 const std::string& inject_fault) {
    sb::ValidationOptions opts;
    opts.seed = cf.seed;
    opts.only = only;
    if (inject_fault == "weight-exponent")
        opts.fault_weight_exponent = true;
    else if (!inject_fault.empty())
        throw std::invalid_argument("unknown fault: " + inject_fault);
    const auto checks = sb::run_validation(opts);
    int failed = 0;
    for (const auto& c : checks) failed += !c.pass;

    if (cf.output == "json") {
        json j;
        j["command"] = "validate";
        j["inputs"]["seed"] = cf.seed;
        j["inputs"]["only"] = only;
        j["inputs"]["inject_fault"] = inject_fault;
        j["results"]["passed"] = int(checks.size()) - failed;
        j["results"]["failed"] = failed;
        j["checks"] = json::array();
        for (const auto& c : checks) {
            json row;
            row["group"] = c.group;
            row["name"] = c.name;
            row["criterion"] = c.criterion;
            row["pass"] = c.pass;
            row["measured"] = num(c.measured);
            row["expected"] = num(c.expected);
            row["tolerance"] = num(c.tolerance);
            row["detail"] = c.detail;
            j["checks"].push_back(row);
        }
        write_output(j.dump(2) + "\n", cf.out_path);
    } else {
        std::string s;
        char buf[512];
        for (const auto& c : checks) {
            std::snprintf(buf, sizeof buf,
                          "[%s] %-15s %-42s measured=%-14.8g expected=%-14.8g "
                          "tol=%-9.3g %s\n",
                          c.pass ? "PASS" : "FAIL", c.group.c_str(),
                          c.name.c_str(), c.measured, c.expected, c.tolerance,
                          c.detail.c_str());
            s += buf;
        }
        std::snprintf(buf, sizeof buf, "%d/%zu checks passed\n",
                      int(checks.size()) - failed, checks.size());
        s += buf;
        write_output(s, cf.out_path);
    }
    return failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sharp first-eigenvalue lower bounds from one-dimensional "
                 "comparison problems"};
    app.require_subcommand(1);

    GeometryFlags gf_bound, gf_sweep, gf_heat;
    CommonFlags cf_bound, cf_sweep, cf_heat, cf_validate;
    std::string method = "both";
    std::string sweep_param = "D";
    double sweep_from = 0.5, sweep_to = 2.0;
    int sweep_points = 8;
    std::string preset = "heat";
    double p_exponent = 2.0, flow_eps = 1e-6, horizon = 1.0, flow_dt = 0.0;
    int flow_nodes = 321;
    std::string dump_path;
    std::vector<std::string> only;
    std::string inject_fault;

    auto* bound = app.add_subcommand("bound", "compute one eigenvalue bound");
    add_geometry_flags(bound, gf_bound);
    add_common_flags(bound, cf_bound);
    bound->add_option("--method", method, "solver route")
        ->check(CLI::IsMember({"shooting", "fd", "both"}));

    auto* sweep = app.add_subcommand("sweep", "tabulate bounds over a grid");
    add_geometry_flags(sweep, gf_sweep);
    add_common_flags(sweep, cf_sweep);
    sweep->add_option("--param", sweep_param, "swept parameter (D or kappa)")
        ->check(CLI::IsMember({"D", "kappa"}));
    sweep->add_option("--from", sweep_from, "grid start")->required();
    sweep->add_option("--to", sweep_to, "grid end")->required();
    sweep->add_option("--points", sweep_points, "grid size");

    auto* heat = app.add_subcommand("heat", "run the 1-D comparison flow");
    add_geometry_flags(heat, gf_heat);
    add_common_flags(heat, cf_heat);
    heat->add_option("--preset", preset, "flow coefficients")
        ->check(CLI::IsMember({"heat", "p", "mcf"}));
    heat->add_option("--p", p_exponent, "p-flow exponent");
    heat->add_option("--eps", flow_eps, "p-flow regularization");
    heat->add_option("--horizon", horizon, "evolution horizon")->required();
    heat->add_option("--flow-nodes", flow_nodes, "flow grid nodes");
    heat->add_option("--dt", flow_dt, "time step (0 = auto)");
    heat->add_option("--dump", dump_path, "write t,s,omega CSV trajectory");

    auto* validate =
        app.add_subcommand("validate", "run the oracle/invariant suite");
    add_common_flags(validate, cf_validate);
    validate->add_option("--only", only, "restrict to validation groups");
    validate
        ->add_option("--inject-fault", inject_fault,
                     "test-only fault hook (weight-exponent)")
        ->group(""); // hidden

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    gf_bound.resolve();
    gf_sweep.resolve();
    gf_heat.resolve();

    try {
        if (bound->parsed())
            return cmd_bound(gf_bound, cf_bound, method);
        if (sweep->parsed())
            return cmd_sweep(gf_sweep, cf_sweep, sweep_param, sweep_from,
                             sweep_to, sweep_points);
        if (heat->parsed())
            return cmd_heat(gf_heat, cf_heat, preset, p_exponent, flow_eps,
                            horizon, flow_nodes, flow_dt, dump_path);
        if (validate->parsed())
            return cmd_validate(cf_validate, only, inject_fault);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
