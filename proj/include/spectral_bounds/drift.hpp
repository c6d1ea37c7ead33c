#pragma once

// DriftSpec: the 1-D drift coefficient b(t) of a comparison problem as a
// sum of kernel terms.  The eigenvalue ODE convention throughout is
//
//     phi'' - b(t) phi' = -lambda phi,
//
// so the Neumann theorem drifts are sums of multiplicity * T-kernels and
// the radial model-space drifts are cot-kernel sums entering with a minus
// sign.  The associated Sturm-Liouville weight w satisfies (log w)' = -b.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "kernels.hpp"

namespace spectral_bounds {

enum class KernelKind {
    tan_type,     // multiplicity * T_{scale*kappa}(t)
    tan_general,  // multiplicity * T_{scale*kappa, Lambda}(t)
    cot_type,     // -multiplicity * sqrt(scale*kappa) cot(sqrt(scale*kappa) t)
};

struct DriftTerm {
    double multiplicity = 1.0;
    KernelKind kind = KernelKind::tan_type;
    CurvatureParam curvature;
    std::optional<BoundaryConvexity> convexity; // tan_general only
    int curvature_scale = 1;                    // 1 or 4

    double scaled_kappa() const { return curvature_scale * curvature.kappa; }
};

class DriftSpec {
  public:
    DriftSpec() = default;

    void add_term(DriftTerm term) {
        if (!(term.multiplicity > 0.0))
            throw std::invalid_argument("drift term multiplicity must be > 0");
        if (term.curvature_scale != 1 && term.curvature_scale != 4)
            throw std::invalid_argument("curvature scale must be 1 or 4");
        if (term.kind == KernelKind::tan_general && !term.convexity)
            throw std::invalid_argument("general kernel term needs a convexity");
        if (term.kind == KernelKind::cot_type && !(term.scaled_kappa() > 0.0))
            throw std::invalid_argument("cot kernel needs positive curvature");
        terms_.push_back(term);
        term_t_max_.push_back(term_domain(term));
    }

    const std::vector<DriftTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    /// Intersection of the term domains.
    KernelDomain domain() const {
        KernelDomain d{kInf};
        for (double tm : term_t_max_) d.t_max = std::min(d.t_max, tm);
        return d;
    }

    /// True when every term is odd in t (tan/cot kernels only).
    bool odd() const {
        for (const auto& term : terms_)
            if (term.kind == KernelKind::tan_general) return false;
        return true;
    }

    /// True when the drift itself blows up at t = 0 (cot kernels).
    bool singular_at_origin() const {
        for (const auto& term : terms_)
            if (term.kind == KernelKind::cot_type) return true;
        return false;
    }

    /// b(t).  Domain error outside the (term-wise) kernel domains.
    double value(double t) const {
        detail::require_finite(t, "t");
        double b = 0.0;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            const DriftTerm& term = terms_[i];
            const double sk = term.scaled_kappa();
            switch (term.kind) {
            case KernelKind::tan_type:
                if (std::abs(t) >= term_t_max_[i])
                    throw std::domain_error("drift evaluated outside its domain");
                b += term.multiplicity * t_kernel(sk, t);
                break;
            case KernelKind::tan_general:
                if (t < 0.0 || t >= term_t_max_[i])
                    throw std::domain_error("drift evaluated outside its domain");
                b += term.multiplicity *
                     (-c_kernel_general_derivative(sk, *term.convexity, t) /
                      c_kernel_general(sk, *term.convexity, t));
                break;
            case KernelKind::cot_type: {
                if (t == 0.0 || std::abs(t) >= term_t_max_[i])
                    throw std::domain_error("drift evaluated outside its domain");
                const double r = std::sqrt(sk);
                b -= term.multiplicity * r * std::cos(r * t) / std::sin(r * t);
                break;
            }
            }
        }
        return b;
    }

    /// Sturm-Liouville weight: the product of kernel antiderivative factors
    /// (c_kappa / C_{kappa,Lambda} / normalized sin powers).  Positive on the
    /// open domain, continuous up to its closure, and (log w)' = -b.
    double weight(double t) const {
        detail::require_finite(t, "t");
        const double tmax = domain().t_max;
        if (std::abs(t) > tmax * (1.0 + 1e-12))
            throw std::domain_error("weight evaluated outside the drift domain");
        double w = 1.0;
        for (const auto& term : terms_) {
            const double sk = term.scaled_kappa();
            double factor = 0.0;
            switch (term.kind) {
            case KernelKind::tan_type:
                factor = c_kernel(sk, t);
                break;
            case KernelKind::tan_general:
                factor = c_kernel_general(sk, *term.convexity, t);
                break;
            case KernelKind::cot_type: {
                const double r = std::sqrt(sk);
                factor = std::sin(r * t) / r;
                break;
            }
            }
            // clamp rounding residue at singular endpoints
            if (factor < 0.0 && factor > -1e-12) factor = 0.0;
            w *= std::pow(factor, term.multiplicity);
        }
        return w;
    }

  private:
    static double term_domain(const DriftTerm& term) {
        const double sk = term.scaled_kappa();
        switch (term.kind) {
        case KernelKind::tan_type:
            return kernel_domain(CurvatureParam{sk}).t_max;
        case KernelKind::tan_general:
            return kernel_domain(CurvatureParam{sk}, *term.convexity).t_max;
        case KernelKind::cot_type:
            return std::acos(-1.0) / std::sqrt(sk);
        }
        return kInf;
    }

    std::vector<DriftTerm> terms_;
    std::vector<double> term_t_max_;
};

/// Free-function form of the weight, matching the kernel-level API.
inline double weight(const DriftSpec& drift, double t) {
    return drift.weight(t);
}

} // namespace spectral_bounds
