#pragma once

// Explicit interpolation lower bounds: closed-form evaluation of
//   sup_{s in (0,1)} ( 4 s (1-s) A + s B ),  A = pi^2/D^2,
// with B the curvature aggregate of the geometry family.  These
// under-estimate the corresponding numerical comparison eigenvalues.

#include <cmath>
#include <stdexcept>

namespace spectral_bounds {

/// sup over s in (0,1) of f(s) = 4 A s (1-s) + B s.  The parabola peaks at
/// s* = (4A+B)/(8A); for B >= 4A the sup is the boundary limit B (approached
/// as s -> 1, not attained), else f(s*) = (4A+B)^2 / (16A).
inline double sup_interpolation(double A, double B) {
    if (!(A > 0.0) || !std::isfinite(A) || B < 0.0 || !std::isfinite(B))
        throw std::invalid_argument(
            "sup_interpolation requires A > 0 and B >= 0");
    if (B >= 4.0 * A) return B;
    const double s = 4.0 * A + B;
    return s * s / (16.0 * A);
}

inline double explicit_bound_generalized(int a, int b, int m, double kappa1,
                                         double kappa2, double diameter) {
    if (a < 1 || b < 1)
        throw std::invalid_argument("a and b must be positive integers");
    if (m < 1) throw std::invalid_argument("dimension must be positive");
    if (kappa1 < 0.0 || kappa2 < 0.0)
        throw std::invalid_argument(
            "explicit bounds require nonnegative curvatures");
    if (!(diameter > 0.0))
        throw std::invalid_argument("diameter must be positive");
    const double pi = std::acos(-1.0);
    const double A = pi * pi / (diameter * diameter);
    const double B = 2.0 * a * (m - 1) * kappa2 + 4.0 * b * kappa1;
    return sup_interpolation(A, B);
}

/// Kahler bound: aggregate 2(m-1) kappa2 + 4 kappa1 (the (a,b) = (1,1) case).
inline double explicit_bound_kahler(int m, double kappa1, double kappa2,
                                    double diameter) {
    return explicit_bound_generalized(1, 1, m, kappa1, kappa2, diameter);
}

/// Quaternion-Kahler bound: aggregate 4(m+2) kappa (the (2,3) case;
/// 4(m-1) kappa + 12 kappa = 4(m+2) kappa).
inline double explicit_bound_qk(int m, double kappa, double diameter) {
    if (m < 2)
        throw std::invalid_argument(
            "quaternion-Kahler bound requires m >= 2");
    return explicit_bound_generalized(2, 3, m, kappa, kappa, diameter);
}

} // namespace spectral_bounds
