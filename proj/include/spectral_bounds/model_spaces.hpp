#pragma once

// Radial Laplacian eigenproblems of the compact rank-one model spaces
// (round sphere, complex and quaternionic projective space), used as
// analytic and numerical oracles for the eigensolver.  Normalization:
// kappa scales the metric so sectional curvatures lie in [kappa, 4 kappa]
// for the projective families (constant kappa for the sphere).

#include <cmath>
#include <stdexcept>

#include "drift.hpp"
#include "eigensolver.hpp"

namespace spectral_bounds {

enum class ModelFamily { sphere, complex_projective, quaternionic_projective };

inline const char* to_string(ModelFamily f) {
    switch (f) {
    case ModelFamily::sphere: return "sphere";
    case ModelFamily::complex_projective: return "complex_projective";
    case ModelFamily::quaternionic_projective: return "quaternionic_projective";
    }
    return "?";
}

struct RadialModel {
    ModelFamily family = ModelFamily::sphere;
    int dim_param = 2; // n for the sphere, m for the projective families
    double kappa = 1.0;

    RadialModel(ModelFamily f, int d, double k = 1.0)
        : family(f), dim_param(d), kappa(k) {
        if (d < (f == ModelFamily::sphere ? 2 : 1))
            throw std::invalid_argument("model dimension too small");
        if (f == ModelFamily::quaternionic_projective && d < 2)
            throw std::invalid_argument(
                "quaternionic projective space requires m >= 2");
        if (!(k > 0.0) || !std::isfinite(k))
            throw std::invalid_argument("model curvature must be positive");
    }

    double diameter() const {
        const double pi = std::acos(-1.0);
        return family == ModelFamily::sphere ? pi / std::sqrt(kappa)
                                             : pi / (2.0 * std::sqrt(kappa));
    }

    /// Radial drift as a DriftSpec in the phi'' - b phi' = -lambda phi
    /// convention: cot-kernel sums with the principal-curvature
    /// multiplicities (n-1), (2m-2, 1), (4m-4, 3).
    DriftSpec radial_drift() const {
        DriftSpec d;
        switch (family) {
        case ModelFamily::sphere:
            d.add_term({double(dim_param - 1), KernelKind::cot_type, kappa,
                        {}, 1});
            break;
        case ModelFamily::complex_projective:
            if (dim_param > 1)
                d.add_term({2.0 * (dim_param - 1), KernelKind::cot_type,
                            kappa, {}, 1});
            d.add_term({1.0, KernelKind::cot_type, kappa, {}, 4});
            break;
        case ModelFamily::quaternionic_projective:
            if (dim_param > 1)
                d.add_term({4.0 * (dim_param - 1), KernelKind::cot_type,
                            kappa, {}, 1});
            d.add_term({3.0, KernelKind::cot_type, kappa, {}, 4});
            break;
        }
        return d;
    }

    /// Closed-form first radial eigenfunction: cos(sqrt(k) r) on the sphere,
    /// cos(2 sqrt(k) r) + (m-1)/(m+1) on the projective families.
    double eigenfunction(double r) const {
        const double rk = std::sqrt(kappa);
        if (family == ModelFamily::sphere) return std::cos(rk * r);
        const double c = double(dim_param - 1) / double(dim_param + 1);
        return std::cos(2.0 * rk * r) + c;
    }

    /// phi'' + (radial Laplacian drift) phi' + lambda phi at radius r for the
    /// stored eigenfunction; ~0 up to rounding.
    double eigenfunction_residual(double r) const {
        const double rk = std::sqrt(kappa);
        double phi, dphi, ddphi;
        if (family == ModelFamily::sphere) {
            phi = std::cos(rk * r);
            dphi = -rk * std::sin(rk * r);
            ddphi = -kappa * phi;
        } else {
            const double c = double(dim_param - 1) / double(dim_param + 1);
            phi = std::cos(2.0 * rk * r) + c;
            dphi = -2.0 * rk * std::sin(2.0 * rk * r);
            ddphi = -4.0 * kappa * std::cos(2.0 * rk * r);
        }
        // radial ODE: phi'' - b(r) phi' = -lambda phi with b the cot drift
        return ddphi - radial_drift().value(r) * dphi +
               radial_first_eigenvalue_analytic() * phi;
    }

    double radial_first_eigenvalue_analytic() const {
        switch (family) {
        case ModelFamily::sphere:
            return dim_param * kappa;
        case ModelFamily::complex_projective:
            return 4.0 * (dim_param + 1) * kappa;
        case ModelFamily::quaternionic_projective:
            return 8.0 * (dim_param + 1) * kappa;
        }
        return 0.0;
    }
};

/// Analytic first nonzero radial eigenvalue: n kappa / 4(m+1) kappa /
/// 8(m+1) kappa.
inline double radial_first_eigenvalue(const RadialModel& model) {
    return model.radial_first_eigenvalue_analytic();
}

/// Numerical radial eigenvalue through the weighted FD path: both endpoints
/// are singular (the weight vanishes), so natural boundary conditions apply
/// at both ends and the constant mode is deflated.
inline EigenResult radial_first_eigenvalue_numeric(const RadialModel& model,
                                                   const SolverConfig& cfg = {}) {
    cfg.validate();
    auto fd = detail::fd_eigen_richardson(model.radial_drift(), 0.0,
                                          model.diameter(), false, 2, cfg);
    EigenResult res;
    res.method = SolveMethod::weighted_fd;
    res.singular_limit = true;
    res.lambda = fd.lambda;
    res.error_bracket = fd.bracket;
    res.mesh.nodes = fd.finest_cells;
    res.mesh.refinement_levels = fd.levels;
    for (std::size_t i = 0; i < fd.finest.centers.size(); ++i)
        res.eigenfunction.push_back({fd.finest.centers[i], fd.finest.phi[i]});
    return res;
}

/// 8(m+1) kappa  minus the 1-D comparison eigenvalue at the model-space
/// diameter (singular-limit solve).  Nonnegative, since the quaternionic
/// projective space realizes both its diameter and its eigenvalue; reported,
/// not asserted zero.
inline double sharpness_gap(int m, double kappa, const SolverConfig& cfg = {}) {
    if (m < 2) throw std::invalid_argument("sharpness_gap requires m >= 2");
    if (!(kappa > 0.0))
        throw std::invalid_argument("sharpness_gap requires kappa > 0");
    const double pi = std::acos(-1.0);
    GeometryInput g =
        GeometryInput::quaternion_kahler(m, kappa, pi / (2.0 * std::sqrt(kappa)));
    g.singular_limit = true;
    const EigenResult r = solve(neumann_problem(g), cfg);
    return 8.0 * (m + 1) * kappa - r.lambda;
}

} // namespace spectral_bounds
