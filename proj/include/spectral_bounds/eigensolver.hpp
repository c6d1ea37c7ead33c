#pragma once

// First-eigenvalue computation for ComparisonProblem by two independent
// routes:
//
//   * adaptive shooting on the ODE phi'' - b phi' = -lambda phi, with the
//     symmetric Neumann problem reduced to [0, D/2], phi(0) = 0,
//     phi'(D/2) = 0 by odd reflection (the drift is odd);
//   * a cell-centered finite-difference discretization of the symmetrized
//     form -(w phi')' = lambda w phi on the full interval, Richardson
//     extrapolated over a mesh-doubling sequence.
//
// The consensus wrapper cross-checks the two (which also validates the
// reflection reduction itself, since the FD route never reduces).
// Singular-limit problems (interval reaching the kernel blow-up) are
// handled by epsilon-truncation in the shooting route and by the naturally
// vanishing weight in the FD route.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <future>
#include <string>
#include <thread>
#include <vector>

#include "detail/ode.hpp"
#include "detail/tridiag.hpp"
#include "problems.hpp"

namespace spectral_bounds {

enum class SolveMethod { shooting, weighted_fd, consensus };

inline const char* to_string(SolveMethod m) {
    switch (m) {
    case SolveMethod::shooting: return "shooting";
    case SolveMethod::weighted_fd: return "weighted_fd";
    case SolveMethod::consensus: return "consensus";
    }
    return "?";
}

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoBracketError : SolverError {
    double scanned_lo, scanned_hi;
    NoBracketError(double lo, double hi)
        : SolverError("no sign change of the shooting miss function in [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "]"),
          scanned_lo(lo), scanned_hi(hi) {}
};

struct ConvergenceError : SolverError {
    using SolverError::SolverError;
};

struct Sample {
    double t;
    double phi;
};

struct MeshInfo {
    int nodes = 0;
    int refinement_levels = 1;
};

struct SolverConfig {
    double rel_tol = 1e-10;
    int max_nodes = 1 << 20;
    int refinement_levels = 4;
    bool singular_limit = false;
    int base_nodes = 256; // coarsest FD mesh in the refinement sequence

    void validate() const {
        if (rel_tol < 1e-13)
            throw std::invalid_argument("rel_tol must be >= 1e-13");
        if (refinement_levels < 2)
            throw std::invalid_argument("refinement_levels must be >= 2");
        if (base_nodes < 8 || max_nodes < base_nodes)
            throw std::invalid_argument("invalid mesh bounds");
    }
};

struct EigenResult {
    double lambda = 0.0;
    SolveMethod method = SolveMethod::shooting;
    double error_bracket = 0.0;
    std::vector<Sample> eigenfunction; // reduced interval [0, L]
    MeshInfo mesh;
    bool singular_limit = false;
};

struct ConsensusError : SolverError {
    EigenResult shooting_result, fd_result;
    ConsensusError(EigenResult sh, EigenResult fd)
        : SolverError("shooting and weighted-FD eigenvalues disagree: " +
                      std::to_string(sh.lambda) + " vs " +
                      std::to_string(fd.lambda)),
          shooting_result(std::move(sh)), fd_result(std::move(fd)) {}
};

namespace detail {

// ---------------------------------------------------------------- shooting

struct ShootOutcome {
    double phi_end = 0.0;
    double dphi_end = 0.0;
    int sign_changes = 0;
};

// Integrates phi'' = b(t) phi' - lambda phi with phi(0) = 0, phi'(0) = 1 up
// to t_end.  The step cap tracks 1/|b| so the integrator creeps into kernel
// singularities instead of overshooting them.
template <class Recorder = std::nullptr_t>
ShootOutcome shoot_once(const DriftSpec& drift, double t_end, double lambda,
                        double rel_tol, Recorder&& record = nullptr) {
    auto rhs = [&](double t, Vec2 y) -> Vec2 {
        return {y[1], drift.value(t) * y[1] - lambda * y[0]};
    };
    auto cap = [&](double t) {
        return 0.25 / (1.0 + std::abs(drift.value(t)));
    };
    ShootOutcome out;
    double prev_phi = 0.0;
    auto observe = [&](double t, const Vec2& y, const Vec2&) {
        if (prev_phi * y[0] < 0.0) ++out.sign_changes;
        if (y[0] != 0.0) prev_phi = y[0];
        if constexpr (!std::is_same_v<std::decay_t<Recorder>, std::nullptr_t>)
            record(t, y);
    };
    Rk45Options opt;
    opt.rel_tol = rel_tol;
    opt.abs_tol = 1e-14;
    const Vec2 end = rk45_integrate(rhs, 0.0, t_end, Vec2{0.0, 1.0}, opt, cap,
                                    observe);
    // the endpoint itself is not an interior sign change
    out.phi_end = end[0];
    out.dphi_end = end[1];
    return out;
}

// Brent root finder on [a, b] with f(a), f(b) of opposite sign.
template <class F>
double brent_root(F&& f, double a, double b, double fa, double fb,
                  double rel_tol) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    double c = a, fc = fa, d = b - a, e = d;
    for (int iter = 0; iter < 200; ++iter) {
        if (fb * fc > 0.0) {
            c = a; fc = fa; d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol = 2.0 * rel_tol * std::abs(b) + 1e-300;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol || fb == 0.0) return b;
        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol * q),
                                   std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm; e = d;
            }
        } else {
            d = xm; e = d;
        }
        a = b; fa = fb;
        b += (std::abs(d) > tol) ? d : (xm > 0.0 ? tol : -tol);
        fb = f(b);
    }
    return b;
}

struct ShootSolve {
    double lambda = 0.0;
    double bracket_width = 0.0;
};

// Finds the smallest lambda > 0 with phi'(t_end; lambda) = 0.  The miss
// function is positive for lambda below the first eigenvalue (at lambda = 0,
// w phi' is a positive constant), so the first sign change brackets it.
inline ShootSolve shoot_first_eigenvalue(const DriftSpec& drift, double t_end,
                                         double rel_tol) {
    auto miss = [&](double lam) {
        return shoot_once(drift, t_end, lam, rel_tol).dphi_end;
    };
    const double pi = std::acos(-1.0);
    double lam_lo = 0.5 * pi * pi / (4.0 * t_end * t_end);
    double f_lo = miss(lam_lo);
    int guard = 0;
    while (f_lo <= 0.0) { // drift can push the eigenvalue below the seed
        lam_lo *= 0.5;
        f_lo = miss(lam_lo);
        if (++guard > 200) throw NoBracketError(lam_lo, lam_lo * 1e60);
    }
    double lam_hi = lam_lo, f_hi = f_lo;
    const double scan_limit = lam_lo * 1e12;
    while (f_hi > 0.0) {
        lam_lo = lam_hi;
        f_lo = f_hi;
        lam_hi *= 1.6;
        if (lam_hi > scan_limit)
            throw NoBracketError(lam_lo / 1e12, lam_hi);
        f_hi = miss(lam_hi);
    }
    const double root =
        brent_root(miss, lam_lo, lam_hi, f_lo, f_hi, rel_tol);
    // verify first-mode identification just below the root, where the
    // endpoint zero of a converged first mode cannot have crept inside
    const double probe = root * (1.0 - std::max(1e3 * rel_tol, 1e-7));
    if (shoot_once(drift, t_end, probe, rel_tol).sign_changes != 0)
        throw SolverError("shooting converged to a higher mode (eigenfunction "
                          "changes sign)");
    return {root, 2.0 * rel_tol * root};
}

// -------------------------------------------------------------- weighted FD

struct FdMeshResult {
    double lambda = 0.0;
    std::vector<double> centers;
    std::vector<double> phi;
};

// Cell-centered flux discretization of -(w phi')' = lambda w phi on [a, b].
// Natural (zero-flux) ends need no boundary data and degrade gracefully to
// the singular case where w vanishes at an endpoint; a Dirichlet left end is
// imposed through the half-cell flux 2 w(a) phi_0 / h.
inline FdMeshResult fd_eigen_mesh(const DriftSpec& drift, double a, double b,
                                  bool dirichlet_left, int k, int cells,
                                  bool want_vector) {
    const int n = cells;
    const double h = (b - a) / n;
    std::vector<double> wf(n + 1), wc(n);
    for (int i = 0; i <= n; ++i) wf[i] = drift.weight(a + i * h);
    for (int i = 0; i < n; ++i) wc[i] = drift.weight(a + (i + 0.5) * h);
    SymTridiag A{std::vector<double>(n), std::vector<double>(n - 1)};
    for (int i = 0; i < n; ++i) {
        const double wl = (i == 0) ? (dirichlet_left ? 2.0 * wf[0] : 0.0)
                                   : wf[i];
        const double wr = (i == n - 1) ? 0.0 : wf[i + 1];
        A.diag[i] = (wl + wr) / (h * h);
        if (i + 1 < n) A.off[i] = -wf[i + 1] / (h * h);
    }
    // similarity transform by the diagonal mass matrix (cell weights)
    SymTridiag C = A;
    for (int i = 0; i < n; ++i) {
        if (!(wc[i] > 0.0))
            throw ConvergenceError("weight vanished at a cell center");
        C.diag[i] /= wc[i];
        if (i + 1 < n) C.off[i] /= std::sqrt(wc[i] * wc[i + 1]);
    }
    FdMeshResult out;
    out.lambda = kth_eigenvalue(C, k);
    if (k > 1) {
        const double lam0 = kth_eigenvalue(C, 1);
        if (std::abs(lam0) > 1e-6 * std::max(1.0, out.lambda))
            throw ConvergenceError(
                "constant-mode deflation failed (lowest eigenvalue not ~0)");
    }
    if (want_vector) {
        std::vector<double> x = tridiag_eigenvector(C, out.lambda, k);
        out.centers.resize(n);
        out.phi.resize(n);
        double amax = 0.0;
        for (int i = 0; i < n; ++i) {
            out.centers[i] = a + (i + 0.5) * h;
            out.phi[i] = x[i] / std::sqrt(wc[i]);
            amax = std::max(amax, std::abs(out.phi[i]));
        }
        // orient so the right end is positive, normalize to max 1
        const double sign = (out.phi[n - 1] >= 0.0) ? 1.0 : -1.0;
        for (double& v : out.phi) v *= sign / amax;
    }
    return out;
}

struct FdSolve {
    double lambda = 0.0;
    double bracket = 0.0;
    FdMeshResult finest;
    int levels = 0;
    int finest_cells = 0;
};

// Richardson extrapolation over a mesh-doubling sequence, Romberg-style in
// h^2.  The bracket is taken from the spread of the last extrapolants; a
// difference sequence that grows under refinement is reported as
// non-convergent rather than extrapolated.
inline FdSolve fd_eigen_richardson(const DriftSpec& drift, double a, double b,
                                   bool dirichlet_left, int k,
                                   const SolverConfig& cfg) {
    int levels = cfg.refinement_levels;
    while (levels > 2 && cfg.base_nodes * (1 << (levels - 1)) > cfg.max_nodes)
        --levels;
    std::vector<double> lam(levels);
    FdSolve out;
    for (int l = 0; l < levels; ++l) {
        const int cells = cfg.base_nodes * (1 << l);
        const bool finest = (l == levels - 1);
        auto r = fd_eigen_mesh(drift, a, b, dirichlet_left, k, cells, finest);
        lam[l] = r.lambda;
        if (finest) {
            out.finest = std::move(r);
            out.finest_cells = cells;
        }
    }
    const double scale = std::abs(lam[levels - 1]);
    if (levels >= 3) {
        const double d_first = std::abs(lam[1] - lam[0]);
        const double d_last = std::abs(lam[levels - 1] - lam[levels - 2]);
        if (d_last > std::max(4.0 * d_first, 1e-9 * scale))
            throw ConvergenceError(
                "finite-difference eigenvalue sequence is not converging "
                "under mesh refinement");
    }
    std::vector<std::vector<double>> T(levels);
    for (int i = 0; i < levels; ++i) {
        T[i].resize(i + 1);
        T[i][0] = lam[i];
        double p4 = 4.0;
        for (int j = 1; j <= i; ++j) {
            T[i][j] = T[i][j - 1] + (T[i][j - 1] - T[i - 1][j - 1]) / (p4 - 1.0);
            p4 *= 4.0;
        }
    }
    out.lambda = T[levels - 1][levels - 1];
    const double spread1 = std::abs(out.lambda - T[levels - 1][levels - 2]);
    const double spread2 = std::abs(out.lambda - T[levels - 2][levels - 2]);
    out.bracket = std::max({spread1, spread2, 1e-14 * scale});
    out.levels = levels;
    return out;
}

inline int env_thread_count() {
    if (const char* s = std::getenv("SPECTRAL_BOUNDS_THREADS")) {
        const int v = std::atoi(s);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? int(hc) : 1;
}

} // namespace detail

// --------------------------------------------------------------- public API

/// Shooting solve.  Symmetric Neumann problems are reduced by odd reflection
/// to phi(0) = 0, phi'(L) = 0 on [0, L]; singular-limit problems are solved
/// on [0, t_max - eps] for eps in {1e-4 .. 1e-7} and extrapolated in eps.
inline EigenResult solve_shooting(const ComparisonProblem& p,
                                  const SolverConfig& cfg = {}) {
    cfg.validate();
    const double L = p.half_length;
    // the config flag engages epsilon truncation only when the interval
    // actually reaches the kernel blow-up
    const double tmax = p.drift.domain().t_max;
    const bool singular =
        p.singular_limit ||
        (cfg.singular_limit && std::isfinite(tmax) &&
         L >= tmax * (1.0 - 1e-8));
    EigenResult res;
    res.method = SolveMethod::shooting;
    res.singular_limit = singular;

    double lambda = 0.0, bracket = 0.0, t_samp_end = L;
    if (!singular) {
        auto s = detail::shoot_first_eigenvalue(p.drift, L, cfg.rel_tol);
        lambda = s.lambda;
        bracket = std::max(s.bracket_width, 10.0 * cfg.rel_tol * s.lambda);
    } else {
        static constexpr double eps_seq[] = {1e-4, 1e-5, 1e-6, 1e-7};
        std::vector<double> lam;
        for (double eps : eps_seq)
            lam.push_back(
                detail::shoot_first_eigenvalue(p.drift, L - eps, cfg.rel_tol)
                    .lambda);
        // Truncation error decays like eps^(nu+1); extrapolate when the
        // difference ratios are clean, otherwise the sequence has already
        // hit the integrator noise floor and the last value stands.
        lambda = lam.back();
        const double d1 = lam[2] - lam[1], d2 = lam[3] - lam[2];
        double spread = 0.0;
        for (std::size_t i = 1; i < lam.size(); ++i)
            spread = std::max(spread, std::abs(lam[i] - lam[i - 1]));
        const double ratio = (d2 != 0.0) ? d1 / d2 : 0.0; // ~10^p, c eps^p
        if (std::abs(d2) > 1e-9 * std::abs(lambda) && ratio > 2.0)
            lambda = lam[3] + d2 / (ratio - 1.0);
        bracket = std::max({spread, std::abs(lambda - lam.back()) * 2.0,
                            100.0 * cfg.rel_tol * std::abs(lambda)});
        t_samp_end = L - eps_seq[3];
        res.mesh.refinement_levels = int(std::size(eps_seq));
    }

    // sample phi on a uniform grid by re-integrating segment by segment
    const int n_samp = 512;
    res.eigenfunction.reserve(n_samp + 1);
    detail::Vec2 y{0.0, 1.0};
    auto rhs = [&](double t, detail::Vec2 v) -> detail::Vec2 {
        return {v[1], p.drift.value(t) * v[1] - lambda * v[0]};
    };
    auto cap = [&](double t) {
        return 0.25 / (1.0 + std::abs(p.drift.value(t)));
    };
    detail::Rk45Options opt;
    opt.rel_tol = cfg.rel_tol;
    res.eigenfunction.push_back({0.0, 0.0});
    for (int i = 1; i <= n_samp; ++i) {
        const double t0 = (i - 1) * t_samp_end / n_samp;
        const double t1 = i * t_samp_end / n_samp;
        y = detail::rk45_integrate(rhs, t0, t1, y, opt, cap);
        res.eigenfunction.push_back({t1, y[0]});
    }
    double amax = 0.0;
    for (const auto& s : res.eigenfunction)
        amax = std::max(amax, std::abs(s.phi));
    for (auto& s : res.eigenfunction) s.phi /= amax;

    res.lambda = lambda;
    res.error_bracket = bracket;
    res.mesh.nodes = int(res.eigenfunction.size());
    return res;
}

/// Weighted finite-difference solve on the full interval (no reflection).
inline EigenResult solve_weighted_fd(const ComparisonProblem& p,
                                     const SolverConfig& cfg = {}) {
    cfg.validate();
    const double L = p.half_length;
    const bool neumann = (p.bc == BoundaryCondition::symmetric_neumann);
    const double a = neumann ? -L : 0.0;
    const bool dirichlet_left = !neumann;
    const int k = neumann ? 2 : 1;
    auto fd = detail::fd_eigen_richardson(p.drift, a, L, dirichlet_left, k,
                                          cfg);
    const double tmax = p.drift.domain().t_max;
    EigenResult res;
    res.method = SolveMethod::weighted_fd;
    res.singular_limit =
        p.singular_limit ||
        (cfg.singular_limit && std::isfinite(tmax) &&
         L >= tmax * (1.0 - 1e-8));
    res.lambda = fd.lambda;
    res.error_bracket = fd.bracket;
    res.mesh.nodes = fd.finest_cells;
    res.mesh.refinement_levels = fd.levels;
    // keep the reduced-interval samples (t >= 0); the full-interval first
    // nonzero mode of the odd-drift problem is odd, so this half carries it
    for (std::size_t i = 0; i < fd.finest.centers.size(); ++i)
        if (fd.finest.centers[i] >= 0.0)
            res.eigenfunction.push_back(
                {fd.finest.centers[i], fd.finest.phi[i]});
    return res;
}

/// Dual-method consensus solve: both routes must agree within
/// max(1e-6, combined relative brackets); the tighter-bracket result wins.
inline EigenResult solve(const ComparisonProblem& p,
                         const SolverConfig& cfg = {}) {
    EigenResult sh = solve_shooting(p, cfg);
    EigenResult fd = solve_weighted_fd(p, cfg);
    const double scale = std::max(std::abs(sh.lambda), std::abs(fd.lambda));
    const double rel = std::abs(sh.lambda - fd.lambda) / scale;
    const double tol =
        std::max(1e-6, (sh.error_bracket + fd.error_bracket) / scale);
    if (rel > tol) throw ConsensusError(sh, fd);
    EigenResult res = (sh.error_bracket <= fd.error_bracket) ? sh : fd;
    res.method = SolveMethod::consensus;
    return res;
}

/// Shooting eigenfunction sampled on the uniform grid i * L / (nodes - 1)
/// over the reduced interval, normalized to max |phi| = 1.
inline std::vector<double> shooting_eigenfunction_on_grid(
    const ComparisonProblem& p, double lambda, int nodes) {
    const double L = p.half_length;
    auto rhs = [&](double t, detail::Vec2 v) -> detail::Vec2 {
        return {v[1], p.drift.value(t) * v[1] - lambda * v[0]};
    };
    auto cap = [&](double t) {
        return 0.25 / (1.0 + std::abs(p.drift.value(t)));
    };
    detail::Rk45Options opt;
    std::vector<double> phi(nodes);
    phi[0] = 0.0;
    detail::Vec2 y{0.0, 1.0};
    for (int i = 1; i < nodes; ++i) {
        y = detail::rk45_integrate(rhs, (i - 1) * L / (nodes - 1),
                                   i * L / (nodes - 1), y, opt, cap);
        phi[i] = y[0];
    }
    double amax = 0.0;
    for (double v : phi) amax = std::max(amax, std::abs(v));
    for (double& v : phi) v /= amax;
    return phi;
}

/// Single-mesh FD eigenvalue (no extrapolation); exposed for convergence
/// studies.
inline double fd_single_mesh_eigenvalue(const ComparisonProblem& p,
                                        int cells) {
    const bool neumann = (p.bc == BoundaryCondition::symmetric_neumann);
    const double a = neumann ? -p.half_length : 0.0;
    return detail::fd_eigen_mesh(p.drift, a, p.half_length, !neumann,
                                 neumann ? 2 : 1, cells, false)
        .lambda;
}

/// Rayleigh quotient  int w (phi')^2 / int w phi^2  of the shooting solution
/// at the given lambda, by Simpson quadrature on a fine uniform grid over
/// the reduced interval.
inline double rayleigh_quotient(const ComparisonProblem& p, double lambda,
                                int intervals = 4096) {
    const double L = p.half_length;
    auto rhs = [&](double t, detail::Vec2 v) -> detail::Vec2 {
        return {v[1], p.drift.value(t) * v[1] - lambda * v[0]};
    };
    auto cap = [&](double t) {
        return 0.25 / (1.0 + std::abs(p.drift.value(t)));
    };
    detail::Rk45Options opt; // defaults are tight enough here
    std::vector<double> phi(intervals + 1), dphi(intervals + 1);
    detail::Vec2 y{0.0, 1.0};
    phi[0] = 0.0;
    dphi[0] = 1.0;
    for (int i = 1; i <= intervals; ++i) {
        y = detail::rk45_integrate(rhs, (i - 1) * L / intervals,
                                   i * L / intervals, y, opt, cap);
        phi[i] = y[0];
        dphi[i] = y[1];
    }
    auto simpson = [&](auto&& f) {
        double s = f(0) + f(intervals);
        for (int i = 1; i < intervals; ++i) s += f(i) * (i % 2 ? 4.0 : 2.0);
        return s; // common factor h/3 cancels in the quotient
    };
    const double num = simpson([&](int i) {
        return p.drift.weight(i * L / intervals) * dphi[i] * dphi[i];
    });
    const double den = simpson([&](int i) {
        return p.drift.weight(i * L / intervals) * phi[i] * phi[i];
    });
    return num / den;
}

struct CurvePoint {
    double param = 0.0;
    bool ok = false;
    EigenResult result;
    std::string error;
};

/// Tabulates the consensus eigenvalue over a diameter (or inradius) grid for
/// a fixed geometry family.  Points at the drift singularity are solved as
/// singular limits and flagged.  Grid points run concurrently; the output
/// order follows the grid.  SPECTRAL_BOUNDS_THREADS overrides parallelism.
inline std::vector<CurvePoint> eigenvalue_curve(
    const GeometryInput& family, const std::vector<double>& extent_grid,
    const SolverConfig& cfg = {}) {
    std::vector<CurvePoint> out(extent_grid.size());
    auto run_point = [&](std::size_t i) {
        CurvePoint& pt = out[i];
        pt.param = extent_grid[i];
        try {
            GeometryInput g = family;
            g.extent = extent_grid[i];
            ComparisonProblem prob;
            if (g.convexity) {
                const double tmax = dirichlet_drift(g).domain().t_max;
                if (std::isfinite(tmax) && g.extent >= tmax * (1.0 - 1e-8))
                    g.singular_limit = true;
                prob = dirichlet_problem(g);
            } else {
                const double tmax = neumann_drift(g).domain().t_max;
                if (std::isfinite(tmax) && g.extent / 2.0 >= tmax * (1.0 - 1e-8))
                    g.singular_limit = true;
                prob = neumann_problem(g);
            }
            pt.result = solve(prob, cfg);
            pt.ok = true;
        } catch (const std::exception& e) {
            pt.error = std::string(e.what()) + " (at extent " +
                       std::to_string(extent_grid[i]) + ")";
        }
    };
    const int threads =
        std::min<int>(int(detail::env_thread_count()), int(out.size()));
    if (threads <= 1) {
        for (std::size_t i = 0; i < out.size(); ++i) run_point(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::future<void>> workers;
        for (int w = 0; w < threads; ++w)
            workers.push_back(std::async(std::launch::async, [&] {
                for (std::size_t i = next++; i < out.size(); i = next++)
                    run_point(i);
            }));
        for (auto& f : workers) f.get();
    }
    return out;
}

} // namespace spectral_bounds
