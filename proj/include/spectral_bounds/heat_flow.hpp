#pragma once

// One-dimensional comparison flow  omega_t = alpha(omega_s) omega_ss
//                                           - b(s) beta(omega_s) omega_s
// on [0, L] with omega(0) = 0 and omega_s(L) = 0, where b is a comparison
// drift.  Includes the isotropic coefficient presets (heat, p-flow,
// graphical mean curvature), large-time decay-rate extraction against the
// eigensolver, and the supersolution comparison harness.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "detail/tridiag.hpp"
#include "eigensolver.hpp"

namespace spectral_bounds {

struct FlowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when a claimed supersolution fails its residual certificate; this
/// is a precondition failure, deliberately distinct from a comparison
/// verdict of false.
struct CertificateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class FlowPreset { heat, p_flow, graphical_mcf, custom };

struct FlowCoefficients {
    std::function<double(double)> alpha;
    std::function<double(double)> beta;
    FlowPreset preset = FlowPreset::custom;
    double p = 2.0;                  // p_flow exponent
    double regularization_eps = 0.0; // degenerate-preset regularization

    static FlowCoefficients heat() {
        FlowCoefficients c;
        c.alpha = [](double) { return 1.0; };
        c.beta = [](double) { return 1.0; };
        c.preset = FlowPreset::heat;
        return c;
    }
    /// p-Laplacian flow: alpha = (p-1)|xi|^{p-2}, beta = |xi|^{p-2},
    /// regularized as (xi^2 + eps^2)^{(p-2)/2}.
    static FlowCoefficients p_flow(double p, double eps = 1e-6) {
        if (!(p > 1.0))
            throw std::invalid_argument("p_flow requires p > 1");
        FlowCoefficients c;
        const double expo = 0.5 * (p - 2.0);
        auto pw = [expo, eps](double xi) {
            return std::pow(xi * xi + eps * eps, expo);
        };
        c.alpha = [pw, p](double xi) { return (p - 1.0) * pw(xi); };
        c.beta = pw;
        c.preset = FlowPreset::p_flow;
        c.p = p;
        c.regularization_eps = eps;
        return c;
    }
    static FlowCoefficients graphical_mcf() {
        FlowCoefficients c;
        c.alpha = [](double xi) { return 1.0 / (1.0 + xi * xi); };
        c.beta = [](double) { return 1.0; };
        c.preset = FlowPreset::graphical_mcf;
        return c;
    }
    static FlowCoefficients custom(std::function<double(double)> a,
                                   std::function<double(double)> b) {
        FlowCoefficients c;
        c.alpha = std::move(a);
        c.beta = std::move(b);
        return c;
    }
};

/// Uniform-grid state on [0, L]: values[i] = omega(i h), h = L / (n-1);
/// values[0] is pinned to 0.
struct FlowState {
    double length = 1.0;
    std::vector<double> values;
    double time = 0.0;

    double h() const { return length / double(values.size() - 1); }
    double max_abs() const {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
    double min_gradient() const {
        double g = kInf;
        const double hh = h();
        for (std::size_t i = 1; i < values.size(); ++i)
            g = std::min(g, (values[i] - values[i - 1]) / hh);
        return g;
    }
};

inline FlowState make_flow_state(double length, int nodes,
                                 const std::function<double(double)>& initial,
                                 double time = 0.0) {
    if (nodes < 8) throw std::invalid_argument("flow grid too coarse");
    if (!(length > 0.0)) throw std::invalid_argument("length must be positive");
    FlowState st;
    st.length = length;
    st.time = time;
    st.values.resize(nodes);
    const double h = length / (nodes - 1);
    for (int i = 0; i < nodes; ++i) st.values[i] = initial(i * h);
    st.values[0] = 0.0; // Dirichlet end of the modulus-of-continuity problem
    return st;
}

namespace detail {

inline double checked_coeff(const std::function<double(double)>& f, double xi,
                            const char* which) {
    const double v = f(xi);
    if (!std::isfinite(v) || !(v > 0.0))
        throw FlowError(std::string("flow coefficient ") + which +
                        " is not positive/finite at gradient " +
                        std::to_string(xi) +
                        " (degenerate preset without regularization?)");
    return v;
}

} // namespace detail

/// Suggested semi-implicit step: 50 x the explicit diffusion limit of the
/// current frozen coefficients.
inline double suggested_dt(const FlowState& st, const FlowCoefficients& c) {
    const double h = st.h();
    double amax = 0.0;
    for (std::size_t i = 1; i < st.values.size(); ++i) {
        const double g = (st.values[i] - st.values[i - 1]) / h;
        amax = std::max(amax, detail::checked_coeff(c.alpha, g, "alpha"));
    }
    return 50.0 * h * h / (4.0 * std::max(amax, 1e-300));
}

/// One semi-implicit step: coefficients frozen at the current gradient, the
/// resulting linear tridiagonal operator solved implicitly.  The advection
/// term at the Neumann end vanishes with omega_s(L) = 0, so the drift is
/// never evaluated at s = L (which may sit on a kernel singularity).
inline FlowState step(const FlowState& state, const FlowCoefficients& coeffs,
                      const DriftSpec& drift, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    const int n = int(state.values.size()) - 1; // unknowns 1..n
    const double h = state.h();
    const std::vector<double>& v = state.values;

    std::vector<double> sub(n - 1), diag(n), sup(n - 1), rhs(n);
    for (int i = 1; i <= n; ++i) {
        const double grad =
            (i < n) ? (v[i + 1] - v[i - 1]) / (2.0 * h) : 0.0;
        const double ai = detail::checked_coeff(coeffs.alpha, grad, "alpha");
        const int row = i - 1;
        rhs[row] = v[i];
        if (i < n) {
            const double bi = detail::checked_coeff(coeffs.beta, grad, "beta");
            const double adv = drift.value(i * h) * bi / (2.0 * h);
            const double dif = ai / (h * h);
            diag[row] = 1.0 + 2.0 * dt * dif;
            if (row > 0) sub[row - 1] = -dt * (dif + adv);
            sup[row] = -dt * (dif - adv);
            // row 0's lower neighbor is the pinned omega(0) = 0
        } else {
            diag[row] = 1.0 + 2.0 * dt * ai / (h * h);
            sub[row - 1] = -2.0 * dt * ai / (h * h); // mirrored ghost node
        }
    }
    detail::tridiag_solve_pivoting(sub, diag, sup, rhs);
    FlowState out = state;
    out.time = state.time + dt;
    out.values[0] = 0.0;
    for (int i = 1; i <= n; ++i) out.values[i] = rhs[i - 1];
    return out;
}

/// Evolves in place to t_target (the final step is shortened to land on it).
template <class Callback = std::nullptr_t>
void evolve(FlowState& state, const FlowCoefficients& coeffs,
            const DriftSpec& drift, double t_target, double dt,
            Callback&& after_step = nullptr) {
    while (state.time < t_target) {
        const double step_dt = std::min(dt, t_target - state.time);
        if (step_dt < 1e-15 * t_target) break;
        state = step(state, coeffs, drift, step_dt);
        if constexpr (!std::is_same_v<std::decay_t<Callback>, std::nullptr_t>)
            after_step(state);
    }
}

struct DecayReport {
    double rate = 0.0;
    double window_start = 0.0;
    double window_end = 0.0;
    double r_squared = 0.0;
    double reference_lambda = 0.0;
};

struct DecayOptions {
    int nodes = 321;
    double dt = 0.0;               // 0: use suggested_dt of the initial state
    double reference_lambda = 0.0; // 0: compute via the consensus solver
    SolverConfig solver;
};

/// Evolves the flow to the horizon and fits -d/dt log ||omega||_inf on the
/// late window [3/lambda, horizon].  The reference lambda is the consensus
/// eigenvalue of the matching comparison problem; for the heat preset the
/// fitted rate reproduces it.
inline DecayReport decay_rate(const FlowCoefficients& coeffs,
                              const ComparisonProblem& problem,
                              const std::function<double(double)>& initial,
                              double horizon, const DecayOptions& opts = {}) {
    const double lambda = opts.reference_lambda > 0.0
                              ? opts.reference_lambda
                              : solve(problem, opts.solver).lambda;
    if (horizon < 6.0 / lambda)
        throw FlowError("horizon " + std::to_string(horizon) +
                        " under-resolves the transient (need >= 6/lambda = " +
                        std::to_string(6.0 / lambda) + ")");
    FlowState st = make_flow_state(problem.half_length, opts.nodes, initial);
    const double dt = opts.dt > 0.0 ? opts.dt : suggested_dt(st, coeffs);
    const double t_start = 3.0 / lambda;
    std::vector<double> ts, lognorms;
    evolve(st, coeffs, problem.drift, horizon, dt, [&](const FlowState& s) {
        if (s.time >= t_start) {
            const double a = s.max_abs();
            if (a > 0.0) {
                ts.push_back(s.time);
                lognorms.push_back(std::log(a));
            }
        }
    });
    if (ts.size() < 8)
        throw FlowError("decay window too short for a rate fit");
    // least-squares line through (t, log||omega||)
    const std::size_t n = ts.size();
    double st_ = 0, sy = 0, stt = 0, sty = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        st_ += ts[i];
        sy += lognorms[i];
        stt += ts[i] * ts[i];
        sty += ts[i] * lognorms[i];
        syy += lognorms[i] * lognorms[i];
    }
    const double denom = n * stt - st_ * st_;
    const double slope = (n * sty - st_ * sy) / denom;
    const double ss_tot = syy - sy * sy / n;
    const double ss_res = ss_tot - slope * (sty - st_ * sy / n);
    DecayReport rep;
    rep.rate = -slope;
    rep.window_start = ts.front();
    rep.window_end = ts.back();
    rep.r_squared =
        (ss_tot > 0.0) ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
    rep.reference_lambda = lambda;
    return rep;
}

struct ComparisonTestOptions {
    int nodes = 201;
    double dt = 0.0;              // 0: suggested_dt of the initial sub state
    double certificate_tol = 0.02;
    double comparison_tol = 1e-3;
    double reference_rate = 0.0;  // scale for the residual thresholds
    int time_samples = 64;
};

/// Parabolic comparison harness: verifies that `super` is a numerical
/// supersolution (residual certificate + monotonicity + initial domination),
/// then evolves `sub_initial` under the flow and checks domination up to the
/// horizon.  A failed certificate throws CertificateError; a comparison
/// failure returns false.
inline bool comparison_test(const FlowCoefficients& coeffs,
                            const DriftSpec& drift, double length,
                            const std::function<double(double)>& sub_initial,
                            const std::function<double(double, double)>& super,
                            double horizon,
                            const ComparisonTestOptions& opts = {}) {
    FlowState st = make_flow_state(length, opts.nodes, sub_initial);
    const double h = st.h();
    const int n = opts.nodes;
    const double dt = opts.dt > 0.0 ? opts.dt : suggested_dt(st, coeffs);

    double sup0 = 0.0;
    for (int i = 0; i < n; ++i)
        sup0 = std::max(sup0, std::abs(super(i * h, 0.0)));
    const double rate_scale =
        opts.reference_rate > 0.0 ? opts.reference_rate : 1.0;

    // residual certificate phi_t - F[phi] >= -tol * scale on a space-time
    // sample grid; derivatives of the claimed supersolution by central
    // differences
    const double dtau = horizon / (8.0 * opts.time_samples);
    for (int j = 0; j <= opts.time_samples; ++j) {
        const double t = j * horizon / opts.time_samples;
        const double tm = std::max(t - dtau, 0.0), tp = t + dtau;
        double amax = 0.0;
        for (int i = 0; i < n; ++i)
            amax = std::max(amax, std::abs(super(i * h, t)));
        for (int i = 1; i + 1 < n; ++i) {
            const double s = i * h; // interior nodes; s + h <= L
            const double phi = super(s, t);
            const double phi_t = (super(s, tp) - super(s, tm)) / (tp - tm);
            const double gl = phi - super(s - h, t);
            const double gr = super(s + h, t) - phi;
            const double grad = (gr + gl) / (2.0 * h);
            if (gl < -opts.certificate_tol * amax)
                throw CertificateError(
                    "supersolution violates the monotonicity hypothesis "
                    "(phi' < 0) at s=" + std::to_string(s));
            const double sec = (gr - gl) / (h * h);
            const double adv = drift.value(s) * grad;
            const double F = detail::checked_coeff(coeffs.alpha, grad,
                                                   "alpha") * sec -
                             adv * detail::checked_coeff(coeffs.beta, grad,
                                                         "beta");
            const double scale =
                rate_scale * (std::abs(phi) + 0.05 * amax) + std::abs(F) * 0.01;
            if (phi_t - F < -opts.certificate_tol * scale)
                throw CertificateError(
                    "supersolution residual certificate failed at (s=" +
                    std::to_string(s) + ", t=" + std::to_string(t) + ")");
        }
    }
    // initial domination
    for (int i = 0; i < n; ++i)
        if (super(i * h, 0.0) <
            st.values[i] - opts.comparison_tol * std::max(sup0, st.max_abs()))
            throw CertificateError("supersolution does not dominate the "
                                   "initial data");

    // evolve and compare
    const double tol = opts.comparison_tol * std::max(sup0, st.max_abs());
    const double sample_every = horizon / opts.time_samples;
    double next_sample = 0.0;
    bool dominated = true;
    evolve(st, coeffs, drift, horizon, dt, [&](const FlowState& s) {
        if (s.time >= next_sample && dominated) {
            next_sample += sample_every;
            for (int i = 0; i < n; ++i)
                if (super(i * h, s.time) < s.values[i] - tol) {
                    dominated = false;
                    break;
                }
        }
    });
    return dominated;
}

/// CSV trajectory dump: rows t,s,omega at every sample time.
inline void dump_trajectory_csv(std::ostream& os,
                                const std::vector<FlowState>& states) {
    os << "t,s,omega\n";
    char buf[64];
    for (const auto& st : states) {
        const double h = st.h();
        for (std::size_t i = 0; i < st.values.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", st.time,
                          i * h, st.values[i]);
            os << buf;
        }
    }
}

} // namespace spectral_bounds
