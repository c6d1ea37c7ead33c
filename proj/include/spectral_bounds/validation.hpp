#pragma once

// The oracle/invariant validation suite behind `spectral-bounds validate`
// and the acceptance runner: classical anchor values, model-space radial
// oracles, dual-solver consensus, explicit-bound dominance, monotonicity,
// flow decay rates, the parabolic comparison harness, and the reflection
// identity.  Each check carries the criterion number it certifies.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "closed_forms.hpp"
#include "heat_flow.hpp"
#include "model_spaces.hpp"

namespace spectral_bounds {

struct CheckResult {
    std::string group;
    std::string name;
    int criterion = 0; // 0: supporting check, not tied to a criterion
    bool pass = false;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0; // relative unless detail says otherwise
    std::string detail;
};

struct ValidationOptions {
    unsigned seed = 12345;
    std::vector<std::string> only;      // group filters; empty = all groups
    bool fault_weight_exponent = false; // test-only negative-control hook
};

namespace validation_detail {

inline double rel_err(double measured, double expected) {
    return std::abs(measured - expected) /
           std::max({std::abs(expected), std::abs(measured), 1e-300});
}

inline CheckResult rel_check(std::string group, std::string name,
                             int criterion, double measured, double expected,
                             double tol) {
    CheckResult c;
    c.group = std::move(group);
    c.name = std::move(name);
    c.criterion = criterion;
    c.measured = measured;
    c.expected = expected;
    c.tolerance = tol;
    c.pass = rel_err(measured, expected) <= tol;
    return c;
}

inline CheckResult bound_check(std::string group, std::string name,
                               int criterion, double measured, double limit,
                               double slack, std::string detail = {}) {
    CheckResult c;
    c.group = std::move(group);
    c.name = std::move(name);
    c.criterion = criterion;
    c.measured = measured;
    c.expected = limit;
    c.tolerance = slack;
    c.pass = measured <= limit + slack;
    c.detail = detail.empty() ? "measured <= expected + tol" : std::move(detail);
    return c;
}

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline bool wants(const ValidationOptions& opts, const std::string& group) {
    if (opts.only.empty()) return true;
    for (const auto& g : opts.only)
        if (g == group) return true;
    return false;
}

// ------------------------------------------------------------------ anchors

inline void anchor_checks(std::vector<CheckResult>& out,
                          const ValidationOptions& opts) {
    if (!wants(opts, "anchors")) return;
    const double pi = std::acos(-1.0);
    // Zhong-Yang floor: kappa = 0, every class, lambda = pi^2/D^2
    for (double D : {0.5, 1.0, 2.0, 4.0}) {
        const double want = pi * pi / (D * D);
        const GeometryInput geos[3] = {
            GeometryInput::riemannian(4, 0.0, D),
            GeometryInput::kahler(3, 0.0, 0.0, D),
            GeometryInput::quaternion_kahler(2, 0.0, D)};
        for (const auto& g : geos)
            out.push_back(rel_check(
                "anchors",
                std::string("zhong_yang_") + to_string(g.cls) + "_D" + fmt(D),
                1, solve(neumann_problem(g)).lambda, want, 1e-8));
    }
    // sphere limit: riemannian kappa = 1, D = pi -> lambda = n
    for (int n : {2, 3, 5}) {
        GeometryInput g = GeometryInput::riemannian(n, 1.0, pi);
        g.singular_limit = true;
        out.push_back(rel_check("anchors",
                                "lichnerowicz_limit_n" + std::to_string(n), 2,
                                solve(neumann_problem(g)).lambda, double(n),
                                1e-6));
    }
}

// ------------------------------------------------------------- model spaces

inline void model_space_checks(std::vector<CheckResult>& out,
                               const ValidationOptions& opts) {
    if (!wants(opts, "model-spaces")) return;
    struct Row {
        ModelFamily family;
        int dim;
        int criterion;
    };
    const Row rows[] = {
        {ModelFamily::sphere, 2, 2},
        {ModelFamily::sphere, 3, 2},
        {ModelFamily::sphere, 5, 2},
        {ModelFamily::complex_projective, 2, 4},
        {ModelFamily::complex_projective, 3, 4},
        {ModelFamily::quaternionic_projective, 2, 3},
        {ModelFamily::quaternionic_projective, 3, 3},
    };
    for (const auto& r : rows) {
        RadialModel model(r.family, r.dim);
        const double expected = radial_first_eigenvalue(model);
        double measured;
        if (opts.fault_weight_exponent && r.family == ModelFamily::sphere) {
            // test-only hook: radial weight exponent off by one
            DriftSpec bad;
            bad.add_term({double(r.dim), KernelKind::cot_type, 1.0, {}, 1});
            measured = detail::fd_eigen_richardson(bad, 0.0, model.diameter(),
                                                   false, 2, SolverConfig{})
                           .lambda;
        } else {
            measured = radial_first_eigenvalue_numeric(model).lambda;
        }
        out.push_back(rel_check("model-spaces",
                                std::string("radial_") + to_string(r.family) +
                                    "_" + std::to_string(r.dim),
                                r.criterion, measured, expected, 1e-6));
    }
    // closed-form eigenfunction residuals, pointwise on the open interval
    for (const auto& r : rows) {
        RadialModel model(r.family, r.dim);
        double worst = 0.0;
        const double lo = 0.01, hi = model.diameter() - 0.01;
        for (int i = 0; i <= 400; ++i)
            worst = std::max(worst, std::abs(model.eigenfunction_residual(
                                        lo + i * (hi - lo) / 400.0)));
        out.push_back(bound_check("model-spaces",
                                  std::string("residual_") +
                                      to_string(r.family) + "_" +
                                      std::to_string(r.dim),
                                  r.family == ModelFamily::sphere ? 2 : r.criterion,
                                  worst, 0.0, 1e-10,
                                  "max |ODE residual| of closed-form "
                                  "eigenfunction"));
    }
    // comparison consistency: mu1_bar(m, 1, pi/2) <= 8(m+1) (+ slack)
    const double pi = std::acos(-1.0);
    for (int m : {2, 3}) {
        GeometryInput g = GeometryInput::quaternion_kahler(m, 1.0, pi / 2.0);
        g.singular_limit = true;
        const double mu = solve(neumann_problem(g)).lambda;
        out.push_back(bound_check(
            "model-spaces", "mu1_le_model_m" + std::to_string(m), 3, mu,
            8.0 * (m + 1), 1e-6,
            "1-D bound cannot exceed the realized model eigenvalue"));
        const double gap = sharpness_gap(m, 1.0);
        CheckResult c;
        c.group = "model-spaces";
        c.name = "sharpness_gap_m" + std::to_string(m);
        c.criterion = 0;
        c.measured = gap;
        c.expected = 0.0;
        c.tolerance = 1e-6;
        c.pass = gap >= -1e-6;
        c.detail = "reported, not asserted zero; must be >= -1e-6";
        out.push_back(c);
    }
    // curvature scaling: lambda(kappa) = kappa * lambda(1)
    {
        double worst = 0.0;
        for (double k : {2.0, 4.0}) {
            RadialModel m1(ModelFamily::quaternionic_projective, 2, 1.0);
            RadialModel mk(ModelFamily::quaternionic_projective, 2, k);
            const double l1 = radial_first_eigenvalue_numeric(m1).lambda;
            const double lk = radial_first_eigenvalue_numeric(mk).lambda;
            worst = std::max(worst, rel_err(lk, k * l1));
        }
        out.push_back(bound_check("model-spaces", "curvature_scaling", 0,
                                  worst, 0.0, 1e-8,
                                  "max rel deviation of lambda(k)=k lambda(1), "
                                  "k in {2,4}"));
    }
}

// ---------------------------------------------------------------- consensus

inline void consensus_checks(std::vector<CheckResult>& out,
                             const ValidationOptions& opts) {
    if (!wants(opts, "consensus")) return;
    const double pi = std::acos(-1.0);
    for (int cls = 0; cls < 3; ++cls) {
        for (double kappa : {-0.5, 0.0, 1.0}) {
            // D_max at kappa = 1: pi (riemannian), pi/2 (kahler, qk)
            const double dmax = (cls == 0) ? pi : pi / 2.0;
            const std::vector<double> Ds =
                (kappa == 1.0)
                    ? std::vector<double>{0.5 * dmax, 0.8 * dmax, dmax}
                    : std::vector<double>{0.5, 1.0, 2.0};
            for (double D : Ds) {
                GeometryInput g =
                    (cls == 0)   ? GeometryInput::riemannian(3, kappa, D)
                    : (cls == 1) ? GeometryInput::kahler(2, kappa, kappa, D)
                                 : GeometryInput::quaternion_kahler(2, kappa, D);
                const bool singular = (kappa == 1.0 && D == dmax);
                g.singular_limit = singular;
                const auto p = neumann_problem(g);
                const auto sh = solve_shooting(p);
                const auto fd = solve_weighted_fd(p);
                const double tol = singular ? 1e-5 : 1e-6;
                auto c = rel_check("consensus",
                                   std::string(to_string(g.cls)) + "_k" +
                                       fmt(kappa) + "_D" + fmt(D),
                                   5, sh.lambda, fd.lambda, tol);
                c.detail = singular ? "singular-limit point" : "";
                out.push_back(std::move(c));
            }
        }
    }
}

// ----------------------------------------------------------- explicit bounds

inline void explicit_bound_checks(std::vector<CheckResult>& out,
                                  const ValidationOptions& opts) {
    if (!wants(opts, "explicit-bounds")) return;
    const double pi = std::acos(-1.0);
    // closed form vs dense s-grid sup (grid argmax + local ternary refine)
    {
        std::mt19937 rng(opts.seed);
        std::uniform_real_distribution<double> dA(0.1, 50.0), dB(0.0, 200.0);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const double A = dA(rng), B = dB(rng);
            auto f = [&](double s) { return 4.0 * A * s * (1.0 - s) + B * s; };
            double best_s = 1e-4, best = f(1e-4);
            for (double s = 2e-4; s < 1.0; s += 1e-4)
                if (f(s) > best) { best = f(s); best_s = s; }
            double lo = std::max(best_s - 1e-4, 1e-15);
            double hi = std::min(best_s + 1e-4, 1.0 - 1e-15);
            for (int it = 0; it < 200; ++it) {
                const double m1 = lo + (hi - lo) / 3.0;
                const double m2 = hi - (hi - lo) / 3.0;
                if (f(m1) < f(m2))
                    lo = m1;
                else
                    hi = m2;
            }
            const double grid_sup = std::max(best, f(0.5 * (lo + hi)));
            worst = std::max(worst,
                             rel_err(sup_interpolation(A, B), grid_sup));
        }
        out.push_back(bound_check("explicit-bounds", "sup_vs_dense_grid", 6,
                                  worst, 0.0, 1e-10,
                                  "100 seeded random (A,B) pairs"));
    }
    // specialization identities are exact by construction; assert bitwise
    {
        bool ok = true;
        for (double k : {0.0, 0.3, 1.0})
            for (int m : {2, 3, 5}) {
                ok = ok && explicit_bound_generalized(2, 3, m, k, k, 1.3) ==
                               explicit_bound_qk(m, k, 1.3);
                ok = ok && explicit_bound_generalized(1, 1, m, 0.2, k, 2.0) ==
                               explicit_bound_kahler(m, 0.2, k, 2.0);
            }
        CheckResult c;
        c.group = "explicit-bounds";
        c.name = "specializations_exact";
        c.criterion = 6;
        c.pass = ok;
        c.detail = "(2,3) == qk and (1,1) == kahler, exact equality";
        out.push_back(c);
    }
    // dominance: explicit bound <= numeric lambda + bracket on kappa >= 0 grid
    auto dominance = [&](const std::string& name, auto&& make_problem,
                         auto&& bound_value, double dmax_kappa1) {
        double worst = -kInf;
        for (int m : {2, 3, 4})
            for (double kappa : {0.0, 0.25, 1.0}) {
                const double dmax =
                    kappa > 0.0 ? dmax_kappa1 / std::sqrt(kappa) : kInf;
                for (double D :
                     {0.5, 1.0, kappa > 0.0 ? 0.9 * dmax : 2.0}) {
                    const auto res = solve(make_problem(m, kappa, D));
                    const double bound = bound_value(m, kappa, D);
                    worst = std::max(
                        worst, (bound - res.lambda - res.error_bracket) /
                                   std::max(res.lambda, 1e-300));
                }
            }
        out.push_back(bound_check("explicit-bounds", name + "_dominance", 6,
                                  worst, 0.0, 1e-9,
                                  "max over grid of (explicit - numeric - "
                                  "bracket)/numeric"));
    };
    dominance(
        "qk",
        [](int m, double k, double D) {
            return neumann_problem(GeometryInput::quaternion_kahler(m, k, D));
        },
        [](int m, double k, double D) { return explicit_bound_qk(m, k, D); },
        pi / 2.0);
    dominance(
        "kahler",
        [](int m, double k, double D) {
            return neumann_problem(GeometryInput::kahler(m, k, 0.5 * k, D));
        },
        [](int m, double k, double D) {
            return explicit_bound_kahler(m, k, 0.5 * k, D);
        },
        pi / 2.0);
    dominance(
        "generalized_a1b2",
        [](int m, double k, double D) {
            return generalized_problem(1, 2, m, k, 0.7 * k, D);
        },
        [](int m, double k, double D) {
            return explicit_bound_generalized(1, 2, m, k, 0.7 * k, D);
        },
        pi / 2.0);
}

// ------------------------------------------------------------- monotonicity

inline void monotonicity_checks(std::vector<CheckResult>& out,
                                const ValidationOptions& opts) {
    if (!wants(opts, "monotonicity")) return;
    for (int cls = 0; cls < 3; ++cls) {
        GeometryInput base =
            (cls == 0)   ? GeometryInput::riemannian(3, 0.5, 1.0)
            : (cls == 1) ? GeometryInput::kahler(2, 0.5, 0.5, 1.0)
                         : GeometryInput::quaternion_kahler(2, 0.5, 1.0);
        // strictly decreasing in D on an 8-point grid
        std::vector<double> Ds;
        for (int i = 0; i < 8; ++i) Ds.push_back(0.4 + i * (2.0 - 0.4) / 7.0);
        const auto curve = eigenvalue_curve(base, Ds);
        bool strict = true;
        double margin = kInf;
        for (std::size_t i = 1; i < curve.size(); ++i) {
            if (!curve[i].ok || !curve[i - 1].ok) { strict = false; break; }
            const double slack = curve[i].result.error_bracket +
                                 curve[i - 1].result.error_bracket;
            margin = std::min(margin, curve[i - 1].result.lambda -
                                          curve[i].result.lambda - slack);
            strict = strict && (curve[i].result.lambda <
                                curve[i - 1].result.lambda + slack);
        }
        CheckResult c;
        c.group = "monotonicity";
        c.name = std::string("lambda_decreasing_in_D_") + to_string(base.cls);
        c.criterion = 7;
        c.pass = strict;
        c.measured = margin;
        c.detail = "min consecutive drop minus bracket slack";
        out.push_back(c);
        // nondecreasing in kappa on [0, 1] at fixed D
        bool nondec = true;
        double prev = -kInf, min_step = kInf;
        for (double kappa : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            GeometryInput g = base;
            g.kappa1 = kappa;
            g.kappa2 = kappa;
            g.extent = 1.0;
            const auto r = solve(neumann_problem(g));
            nondec = nondec && (r.lambda >= prev - r.error_bracket);
            if (prev > -kInf) min_step = std::min(min_step, r.lambda - prev);
            prev = r.lambda;
        }
        CheckResult ck;
        ck.group = "monotonicity";
        ck.name = std::string("lambda_nondecreasing_in_kappa_") +
                  to_string(base.cls);
        ck.criterion = 7;
        ck.pass = nondec;
        ck.measured = min_step;
        ck.detail = "min consecutive increment over the kappa grid";
        out.push_back(ck);
    }
}

// --------------------------------------------------------------------- flow

inline void flow_checks(std::vector<CheckResult>& out,
                        const ValidationOptions& opts) {
    if (!wants(opts, "flow")) return;
    const double pi = std::acos(-1.0);
    for (int cls = 0; cls < 3; ++cls)
        for (double kappa : {0.0, 0.5})
            for (double D : {1.0, 2.0}) {
                GeometryInput g =
                    (cls == 0)   ? GeometryInput::riemannian(3, kappa, D)
                    : (cls == 1) ? GeometryInput::kahler(2, kappa, kappa, D)
                                 : GeometryInput::quaternion_kahler(2, kappa, D);
                const auto p = neumann_problem(g);
                const double lambda = solve(p).lambda;
                DecayOptions dopt;
                dopt.reference_lambda = lambda;
                const auto rep =
                    decay_rate(FlowCoefficients::heat(), p,
                               [](double s) { return s; }, 8.0 / lambda, dopt);
                out.push_back(rel_check("flow",
                                        std::string("decay_") +
                                            to_string(g.cls) + "_k" +
                                            fmt(kappa) + "_D" + fmt(D),
                                        8, rep.rate, lambda, 0.01));
            }
    // exact kappa = 0 decay with a scheme-error bracket from a refined run
    {
        const double D = 2.0, L = D / 2.0, lambda = pi * pi / (D * D);
        auto initial = [&](double s) { return std::sin(pi * s / D); };
        auto run = [&](int nodes, double dt, double T) {
            FlowState st = make_flow_state(L, nodes, initial);
            DriftSpec none;
            evolve(st, FlowCoefficients::heat(), none, T, dt);
            return st;
        };
        const double T = 0.5;
        FlowState coarse = run(201, 2e-4, T), fine = run(401, 5e-5, T);
        double err = 0.0, diff = 0.0;
        for (std::size_t i = 0; i < coarse.values.size(); ++i) {
            const double s = i * coarse.h();
            err = std::max(err, std::abs(coarse.values[i] -
                                         std::exp(-lambda * T) * initial(s)));
            diff = std::max(diff,
                            std::abs(coarse.values[i] - fine.values[2 * i]));
        }
        const double bracket = 4.0 * diff + 1e-12;
        out.push_back(bound_check("flow", "exact_decay_kappa0", 8, err, 0.0,
                                  bracket,
                                  "sup error vs exp(-pi^2 t/D^2) sin(pi s/D); "
                                  "tol = scheme bracket from refined run"));
    }
}

// --------------------------------------------------------------- comparison

inline void comparison_checks(std::vector<CheckResult>& out,
                              const ValidationOptions& opts) {
    if (!wants(opts, "comparison")) return;
    const auto p =
        neumann_problem(GeometryInput::quaternion_kahler(2, 0.5, 1.0));
    const double lambda = solve(p).lambda;
    const double L = p.half_length;
    ComparisonTestOptions copt;
    copt.reference_rate = lambda;
    const std::vector<double> phi =
        shooting_eigenfunction_on_grid(p, lambda, copt.nodes);
    const double h = L / (copt.nodes - 1);
    auto phi_at = [&, phi](double s) {
        return phi[std::size_t(std::lround(s / h))];
    };
    auto sub_init = [&](double s) { return phi_at(s); };
    const double horizon = 10.0 / lambda;

    auto run_pair = [&](const std::string& name, double rate_factor,
                        double amplitude) {
        auto super = [&, rate_factor, amplitude](double s, double t) {
            return amplitude * std::exp(-rate_factor * lambda * t) * phi_at(s);
        };
        CheckResult c;
        c.group = "comparison";
        c.name = name;
        c.criterion = 9;
        try {
            c.pass = comparison_test(FlowCoefficients::heat(), p.drift, L,
                                     sub_init, super, horizon, copt);
            c.detail = c.pass ? "domination maintained to horizon 10/lambda"
                              : "domination FAILED";
        } catch (const CertificateError& e) {
            c.pass = false;
            c.detail = std::string("certificate rejected: ") + e.what();
        }
        out.push_back(c);
    };
    run_pair("scaled_exact_solution", 1.0, 1.1);
    run_pair("slower_supersolution", 0.9, 1.0);
    // corrupted certificate must be rejected at the precondition
    {
        auto bad_super = [&](double s, double t) {
            return std::exp(-1.1 * lambda * t) * phi_at(s);
        };
        CheckResult c;
        c.group = "comparison";
        c.name = "corrupted_certificate_rejected";
        c.criterion = 9;
        try {
            (void)comparison_test(FlowCoefficients::heat(), p.drift, L,
                                  sub_init, bad_super, horizon, copt);
            c.pass = false;
            c.detail = "corrupted supersolution was NOT rejected";
        } catch (const CertificateError&) {
            c.pass = true;
            c.detail = "rejected at the precondition, no comparison verdict";
        }
        out.push_back(c);
    }
}

// --------------------------------------------------------------- reflection

inline void reflection_checks(std::vector<CheckResult>& out,
                              const ValidationOptions& opts) {
    if (!wants(opts, "reflection")) return;
    struct Row {
        GeometryClass cls;
        double kappa, R;
    };
    const Row rows[] = {
        {GeometryClass::riemannian, 0.0, 0.5},
        {GeometryClass::riemannian, 1.0, 0.6},
        {GeometryClass::kahler, 0.5, 0.5},
        {GeometryClass::kahler, -0.5, 0.8},
        {GeometryClass::quaternion_kahler, 1.0, 0.4},
        {GeometryClass::quaternion_kahler, 0.25, 0.9},
    };
    for (const auto& r : rows) {
        GeometryInput gd =
            (r.cls == GeometryClass::riemannian)
                ? GeometryInput::riemannian(3, r.kappa, r.R)
            : (r.cls == GeometryClass::kahler)
                ? GeometryInput::kahler(2, r.kappa, r.kappa, r.R)
                : GeometryInput::quaternion_kahler(2, r.kappa, r.R);
        gd.convexity = 0.0;
        const double lam_dirichlet = solve(dirichlet_problem(gd)).lambda;
        GeometryInput gn = gd;
        gn.convexity.reset();
        gn.extent = 2.0 * r.R;
        const double mu_2R = solve(neumann_problem(gn)).lambda;
        gn.extent = r.R;
        const double mu_R = solve(neumann_problem(gn)).lambda;
        auto c = rel_check("reflection",
                           std::string("lambda1_vs_mu1_2R_") +
                               to_string(r.cls) + "_k" + fmt(r.kappa) + "_R" +
                               fmt(r.R),
                           10, lam_dirichlet, mu_2R, 1e-6);
        c.detail = "half-interval comparand mu1_bar(D=R) = " + fmt(mu_R) +
                   " (printed, not asserted)";
        out.push_back(std::move(c));
    }
}

} // namespace validation_detail

inline std::vector<CheckResult> run_validation(
    const ValidationOptions& opts = {}) {
    std::vector<CheckResult> out;
    validation_detail::anchor_checks(out, opts);
    validation_detail::model_space_checks(out, opts);
    validation_detail::consensus_checks(out, opts);
    validation_detail::explicit_bound_checks(out, opts);
    validation_detail::monotonicity_checks(out, opts);
    validation_detail::flow_checks(out, opts);
    validation_detail::comparison_checks(out, opts);
    validation_detail::reflection_checks(out, opts);
    return out;
}

} // namespace spectral_bounds
