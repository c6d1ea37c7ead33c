#pragma once

// Scalar comparison kernels: T_kappa, c_kappa and their boundary-convexity
// generalizations T_{kappa,Lambda}, C_{kappa,Lambda}, uniformly across the
// sign of kappa.  All functions are pure and thread-safe.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace spectral_bounds {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Sectional-type curvature normalization (units 1/length^2).
struct CurvatureParam {
    double kappa = 0.0;
    CurvatureParam() = default;
    CurvatureParam(double k) : kappa(k) {}
};

/// Lower bound on the boundary second fundamental form (units 1/length).
struct BoundaryConvexity {
    double lambda = 0.0;
    BoundaryConvexity() = default;
    BoundaryConvexity(double l) : lambda(l) {}
};

/// First positive singularity of a kernel; +inf if the kernel is global.
struct KernelDomain {
    double t_max = kInf;
    bool finite() const { return std::isfinite(t_max); }
};

namespace detail {

inline void require_finite(double x, const char* what) {
    if (!std::isfinite(x))
        throw std::domain_error(std::string("non-finite ") + what);
}

// sin(x)/x and sinh(x)/x with a series guard at the origin.
inline double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}
inline double sinhc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 + x * x / 6.0;
    return std::sinh(x) / x;
}

} // namespace detail

/// Domain limit of T_kappa: pi/(2 sqrt(kappa)) for kappa > 0, +inf otherwise.
inline KernelDomain kernel_domain(CurvatureParam kappa) {
    detail::require_finite(kappa.kappa, "curvature");
    if (kappa.kappa > 0.0)
        return {std::acos(-1.0) / (2.0 * std::sqrt(kappa.kappa))};
    return {kInf};
}

/// T_kappa(t): sqrt(k) tan(sqrt(k) t) / 0 / -sqrt(-k) tanh(sqrt(-k) t).
/// Odd in t; defined for |t| < t_max(kappa).  Near kappa = 0 the uniform
/// series T = k t + k^2 t^3 / 3 + 2 k^3 t^5 / 15 avoids the 0/0 seam.
inline double t_kernel(CurvatureParam kappa, double t) {
    const double k = kappa.kappa;
    detail::require_finite(k, "curvature");
    detail::require_finite(t, "t");
    const double kt2 = k * t * t;
    if (std::abs(kt2) < 1e-8)
        return k * t * (1.0 + kt2 / 3.0 + 2.0 * kt2 * kt2 / 15.0);
    if (k > 0.0) {
        const double tmax = kernel_domain(kappa).t_max;
        if (std::abs(t) >= tmax)
            throw std::domain_error("t_kernel: |t| at or beyond pi/(2 sqrt(kappa))");
        const double rk = std::sqrt(k);
        return rk * std::tan(rk * t);
    }
    const double ru = std::sqrt(-k);
    return -ru * std::tanh(ru * t);
}

/// c_kappa(t): cos / 1 / cosh branches; satisfies c' = -T_kappa c.
inline double c_kernel(CurvatureParam kappa, double t) {
    const double k = kappa.kappa;
    detail::require_finite(k, "curvature");
    detail::require_finite(t, "t");
    if (k > 0.0) return std::cos(std::sqrt(k) * t);
    if (k < 0.0) return std::cosh(std::sqrt(-k) * t);
    return 1.0;
}

/// C_{kappa,Lambda}(t): the solution of phi'' + kappa phi = 0 with
/// phi(0) = 1, phi'(0) = -Lambda.  Globally defined; the Lambda term is
/// written as Lambda * t * sinc(sqrt(|kappa|) t) so the branches agree
/// through kappa = 0.
inline double c_kernel_general(CurvatureParam kappa, BoundaryConvexity lambda,
                               double t) {
    const double k = kappa.kappa, l = lambda.lambda;
    detail::require_finite(k, "curvature");
    detail::require_finite(l, "convexity");
    detail::require_finite(t, "t");
    if (k > 0.0) {
        const double x = std::sqrt(k) * t;
        return std::cos(x) - l * t * detail::sinc(x);
    }
    if (k < 0.0) {
        const double x = std::sqrt(-k) * t;
        return std::cosh(x) - l * t * detail::sinhc(x);
    }
    return 1.0 - l * t;
}

/// d/dt of C_{kappa,Lambda}.
inline double c_kernel_general_derivative(CurvatureParam kappa,
                                          BoundaryConvexity lambda, double t) {
    const double k = kappa.kappa, l = lambda.lambda;
    detail::require_finite(k, "curvature");
    detail::require_finite(l, "convexity");
    detail::require_finite(t, "t");
    if (k > 0.0) {
        const double rk = std::sqrt(k), x = rk * t;
        return -rk * std::sin(x) - l * std::cos(x);
    }
    if (k < 0.0) {
        const double ru = std::sqrt(-k), x = ru * t;
        return ru * std::sinh(x) - l * std::cosh(x);
    }
    return -l;
}

/// First positive zero of C_{kappa,Lambda}, or +inf when it never vanishes.
/// Closed form for kappa = 0; otherwise bisection on the first sign change,
/// refined to 1e-14 relative width.
inline KernelDomain kernel_domain(CurvatureParam kappa,
                                  BoundaryConvexity lambda) {
    const double k = kappa.kappa, l = lambda.lambda;
    detail::require_finite(k, "curvature");
    detail::require_finite(l, "convexity");
    if (k == 0.0) return {l > 0.0 ? 1.0 / l : kInf};
    double lo = 0.0, hi;
    if (k > 0.0) {
        // C(pi/sqrt(k)) = -1 - 0, so a zero is always bracketed.
        hi = std::acos(-1.0) / std::sqrt(k);
        if (c_kernel_general(kappa, lambda, hi) >= 0.0)
            hi *= 1.0 + 1e-12; // rounding guard; C(hi) < 0 analytically
    } else {
        // cosh - (l/sqrt(-k)) sinh stays positive iff l <= sqrt(-k).
        const double ru = std::sqrt(-k);
        if (l <= ru) return {kInf};
        hi = 1.0 / ru;
        while (c_kernel_general(kappa, lambda, hi) > 0.0) hi *= 2.0;
    }
    for (int i = 0; i < 200 && (hi - lo) > 1e-14 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (c_kernel_general(kappa, lambda, mid) > 0.0 ? lo : hi) = mid;
    }
    return {lo}; // C > 0 here; the zero itself lies outside the domain
}

/// T_{kappa,Lambda}(t) = -C'_{kappa,Lambda}(t) / C_{kappa,Lambda}(t).
/// Defined on [0, first zero of C); T_{kappa,0} == T_kappa there.
inline double t_kernel_general(CurvatureParam kappa, BoundaryConvexity lambda,
                               double t) {
    detail::require_finite(t, "t");
    if (t < 0.0)
        throw std::domain_error("t_kernel_general: t must be nonnegative");
    const double tmax = kernel_domain(kappa, lambda).t_max;
    if (t >= tmax)
        throw std::domain_error(
            "t_kernel_general: t at or beyond the first zero of C");
    return -c_kernel_general_derivative(kappa, lambda, t) /
           c_kernel_general(kappa, lambda, t);
}

} // namespace spectral_bounds
