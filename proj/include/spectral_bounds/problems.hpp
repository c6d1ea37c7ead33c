#pragma once

// Construction of the 1-D comparison eigenvalue problems from user-facing
// geometric data: Neumann problems on [-D/2, D/2] for closed/convex
// manifolds, mixed Dirichlet/Neumann problems on [0, R] for manifolds with
// boundary, and the generalized two-parameter (a, b) family.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "drift.hpp"

namespace spectral_bounds {

enum class GeometryClass { riemannian, kahler, quaternion_kahler };

enum class BoundaryCondition { symmetric_neumann, dirichlet_neumann };

inline const char* to_string(GeometryClass c) {
    switch (c) {
    case GeometryClass::riemannian: return "riemannian";
    case GeometryClass::kahler: return "kahler";
    case GeometryClass::quaternion_kahler: return "quaternion_kahler";
    }
    return "?";
}

/// User-facing description of the geometry hypothesis.
///   riemannian:        dim = n,  curvature = kappa (Ricci >= (n-1) kappa)
///   kahler:            dim = m,  kappa1 (holomorphic sectional >= 4 kappa1),
///                      kappa2 (orthogonal Ricci >= 2(m-1) kappa2)
///   quaternion_kahler: dim = m >= 2, kappa (scalar >= 16 m (m+2) kappa)
/// extent is a diameter D (Neumann) or an inradius R (Dirichlet).
struct GeometryInput {
    GeometryClass cls = GeometryClass::riemannian;
    int dim = 2;
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double extent = 1.0;
    std::optional<double> convexity; // Lambda, required for Dirichlet problems
    bool singular_limit = false;

    static GeometryInput riemannian(int n, double kappa, double extent) {
        return {GeometryClass::riemannian, n, kappa, 0.0, extent, {}, false};
    }
    static GeometryInput kahler(int m, double kappa1, double kappa2,
                                double extent) {
        return {GeometryClass::kahler, m, kappa1, kappa2, extent, {}, false};
    }
    static GeometryInput quaternion_kahler(int m, double kappa, double extent) {
        return {GeometryClass::quaternion_kahler, m, kappa, 0.0, extent, {},
                false};
    }
};

/// A fully specified 1-D eigenvalue BVP.  For symmetric_neumann the interval
/// is [-L, L] with L = D/2; for dirichlet_neumann it is [0, R] with L = R.
struct ComparisonProblem {
    DriftSpec drift;
    double half_length = 1.0;
    BoundaryCondition bc = BoundaryCondition::symmetric_neumann;
    bool singular_limit = false;
};

namespace detail {

inline void validate_geometry(const GeometryInput& g) {
    if (g.dim < 1) throw std::invalid_argument("dimension must be positive");
    if (g.cls == GeometryClass::quaternion_kahler && g.dim < 2)
        throw std::invalid_argument(
            "quaternion-Kahler geometry requires quaternionic dimension m >= 2");
    if (!(g.extent > 0.0) || !std::isfinite(g.extent))
        throw std::invalid_argument("extent must be positive and finite");
    require_finite(g.kappa1, "curvature");
    require_finite(g.kappa2, "curvature");
    if (g.convexity) require_finite(*g.convexity, "convexity");
}

// Kernel multiplicities per geometry class: {scale-1 mult, scale-4 mult}.
// riemannian: (n-1) T_k;  kahler: 2(m-1) T_{k2} + T_{4 k1};
// quaternion-Kahler: 4(m-1) T_k + 3 T_{4k}.
struct KernelLayout {
    double mult1;      // scale-1 term multiplicity
    double kappa1param;// its curvature
    double mult4;      // scale-4 term multiplicity
    double kappa4param;// its curvature
};

inline KernelLayout kernel_layout(const GeometryInput& g) {
    switch (g.cls) {
    case GeometryClass::riemannian:
        return {double(g.dim - 1), g.kappa1, 0.0, 0.0};
    case GeometryClass::kahler:
        return {2.0 * (g.dim - 1), g.kappa2, 1.0, g.kappa1};
    case GeometryClass::quaternion_kahler:
        return {4.0 * (g.dim - 1), g.kappa1, 3.0, g.kappa1};
    }
    throw std::logic_error("unreachable");
}

// Checks L against the drift domain; snaps to t_max under the singular-limit
// flag (within 1e-8 relative, so truncated decimal inputs still qualify).
inline double admit_half_length(const DriftSpec& drift, double L,
                                bool singular_flag, bool& is_singular) {
    const double tmax = drift.domain().t_max;
    is_singular = false;
    if (!std::isfinite(tmax)) return L;
    if (singular_flag && L >= tmax * (1.0 - 1e-8) && L <= tmax * (1.0 + 1e-8)) {
        is_singular = true;
        return tmax;
    }
    if (L >= tmax) {
        if (L < tmax * (1.0 + 1e-8))
            throw std::domain_error(
                "interval reaches the drift singularity; pass the "
                "singular-limit flag to solve the limiting problem");
        throw std::domain_error(
            "interval exceeds the drift domain (half-length " +
            std::to_string(L) + " >= t_max " + std::to_string(tmax) + ")");
    }
    return L;
}

} // namespace detail

/// Drift of the Neumann comparison problem for g (interval-free).
inline DriftSpec neumann_drift(const GeometryInput& g) {
    detail::validate_geometry(g);
    const auto layout = detail::kernel_layout(g);
    DriftSpec drift;
    if (layout.mult1 > 0.0)
        drift.add_term({layout.mult1, KernelKind::tan_type,
                        layout.kappa1param, {}, 1});
    if (layout.mult4 > 0.0)
        drift.add_term({layout.mult4, KernelKind::tan_type,
                        layout.kappa4param, {}, 4});
    return drift;
}

/// Drift of the Dirichlet comparison problem for g (interval-free).
inline DriftSpec dirichlet_drift(const GeometryInput& g) {
    detail::validate_geometry(g);
    if (!g.convexity)
        throw std::invalid_argument(
            "dirichlet problem requires the boundary convexity Lambda");
    const auto layout = detail::kernel_layout(g);
    const BoundaryConvexity lam{*g.convexity};
    DriftSpec drift;
    if (layout.mult1 > 0.0)
        drift.add_term({layout.mult1, KernelKind::tan_general,
                        layout.kappa1param, lam, 1});
    if (layout.mult4 > 0.0)
        drift.add_term({layout.mult4, KernelKind::tan_general,
                        layout.kappa4param, lam, 4});
    return drift;
}

/// Neumann comparison problem on [-D/2, D/2] (extent read as a diameter).
inline ComparisonProblem neumann_problem(const GeometryInput& g) {
    DriftSpec drift = neumann_drift(g);
    ComparisonProblem p;
    p.half_length = detail::admit_half_length(drift, g.extent / 2.0,
                                              g.singular_limit,
                                              p.singular_limit);
    p.drift = std::move(drift);
    p.bc = BoundaryCondition::symmetric_neumann;
    return p;
}

/// Mixed Dirichlet/Neumann comparison problem on [0, R] (extent read as an
/// inradius; convexity Lambda required).
inline ComparisonProblem dirichlet_problem(const GeometryInput& g) {
    DriftSpec drift = dirichlet_drift(g);
    ComparisonProblem p;
    p.half_length = detail::admit_half_length(drift, g.extent,
                                              g.singular_limit,
                                              p.singular_limit);
    p.drift = std::move(drift);
    p.bc = BoundaryCondition::dirichlet_neumann;
    return p;
}

/// Generalized Neumann family: drift
///   2 a (m-1) sqrt(k2) tan(sqrt(k2) t) + 2 b sqrt(k1) tan(2 sqrt(k1) t)
/// on [-D/2, D/2].  Specializes to the quaternion-Kahler drift at
/// (a, b) = (2, 3) and to the Kahler drift at (1, 1).  Curvatures must be
/// nonnegative for this family.
inline ComparisonProblem generalized_problem(int a, int b, int m,
                                             double kappa1, double kappa2,
                                             double diameter,
                                             bool singular_flag = false) {
    if (a < 1 || b < 1)
        throw std::invalid_argument("a and b must be positive integers");
    if (m < 1) throw std::invalid_argument("dimension must be positive");
    if (kappa1 < 0.0 || kappa2 < 0.0)
        throw std::invalid_argument(
            "generalized family requires nonnegative curvatures");
    if (!(diameter > 0.0))
        throw std::invalid_argument("diameter must be positive");
    DriftSpec drift;
    const double mult1 = 2.0 * a * (m - 1);
    if (mult1 > 0.0)
        drift.add_term({mult1, KernelKind::tan_type, kappa2, {}, 1});
    drift.add_term({double(b), KernelKind::tan_type, kappa1, {}, 4});
    ComparisonProblem p;
    p.half_length = detail::admit_half_length(drift, diameter / 2.0,
                                              singular_flag, p.singular_limit);
    p.drift = std::move(drift);
    p.bc = BoundaryCondition::symmetric_neumann;
    return p;
}

/// Upper bound for the Laplacian of the distance-to-boundary function at
/// distance s, for quaternion-Kahler geometry with convexity Lambda:
///   Delta d <= -4(m-1) T_{kappa,Lambda}(s) - 3 T_{4 kappa,Lambda}(s).
inline double laplace_comparison_rhs(const GeometryInput& g, double s) {
    if (g.cls != GeometryClass::quaternion_kahler)
        throw std::invalid_argument(
            "laplace comparison bound is stated for quaternion-Kahler input");
    detail::validate_geometry(g);
    GeometryInput gd = g;
    if (!gd.convexity)
        throw std::invalid_argument("laplace comparison requires Lambda");
    // Interval length is irrelevant here; rebuild the drift alone.
    const BoundaryConvexity lam{*gd.convexity};
    DriftSpec drift;
    drift.add_term({4.0 * (gd.dim - 1), KernelKind::tan_general, gd.kappa1,
                    lam, 1});
    drift.add_term({3.0, KernelKind::tan_general, gd.kappa1, lam, 4});
    return -drift.value(s);
}

} // namespace spectral_bounds
