#pragma once

// Symmetric tridiagonal eigenvalue utilities (Sturm-count bisection and
// inverse iteration) plus tridiagonal linear solvers.  These back both the
// weighted finite-difference eigensolver and the semi-implicit flow stepper.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace spectral_bounds::detail {

struct SymTridiag {
    std::vector<double> diag; // n entries
    std::vector<double> off;  // n-1 entries
    std::size_t size() const { return diag.size(); }
};

// Pivot floor keeping e^2 / pivmin finite (dstebz-style).
inline double sturm_pivmin(const SymTridiag& T) {
    double e2max = 1.0;
    for (double e : T.off) e2max = std::max(e2max, e * e);
    return std::numeric_limits<double>::min() * e2max;
}

// Number of eigenvalues of T below sigma (LDL^T inertia count).  Pivots with
// |d| < pivmin are forced to -pivmin and counted, so exact hits on leading
// principal minors do not derail the sequence.
inline int sturm_count(const SymTridiag& T, double sigma, double pivmin) {
    const std::size_t n = T.size();
    int count = 0;
    double d = T.diag[0] - sigma;
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++count;
    for (std::size_t i = 1; i < n; ++i) {
        d = (T.diag[i] - sigma) - T.off[i - 1] * T.off[i - 1] / d;
        if (std::abs(d) < pivmin) d = -pivmin;
        if (d < 0.0) ++count;
    }
    return count;
}

inline int sturm_count(const SymTridiag& T, double sigma) {
    return sturm_count(T, sigma, sturm_pivmin(T));
}

// k-th smallest eigenvalue (k is 1-based), bisection to near machine
// precision relative to the spectral scale.
inline double kth_eigenvalue(const SymTridiag& T, int k) {
    const std::size_t n = T.size();
    if (k < 1 || std::size_t(k) > n)
        throw std::invalid_argument("kth_eigenvalue: index out of range");
    double lo = T.diag[0], hi = T.diag[0];
    for (std::size_t i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::abs(T.off[i - 1]) : 0.0) +
                         (i + 1 < n ? std::abs(T.off[i]) : 0.0);
        lo = std::min(lo, T.diag[i] - r);
        hi = std::max(hi, T.diag[i] + r);
    }
    const double pivmin = sturm_pivmin(T);
    for (int iter = 0;
         iter < 200 && (hi - lo) > 2.5e-16 * (std::abs(lo) + std::abs(hi));
         ++iter) {
        const double mid = 0.5 * (lo + hi);
        (sturm_count(T, mid, pivmin) >= k ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

// Solves a general tridiagonal system with partial pivoting (dgtsv-style).
// sub/diag/sup are copied; rhs is overwritten with the solution.
inline void tridiag_solve_pivoting(std::vector<double> sub,
                                   std::vector<double> diag,
                                   std::vector<double> sup,
                                   std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    std::vector<double> sup2(n, 0.0); // second superdiagonal fill-in
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(sub[i]) > std::abs(diag[i])) {
            std::swap(diag[i], sub[i]);      // row swap: pivot from row i+1
            std::swap(sup[i], diag[i + 1]);  // note sub[i] now holds old diag
            if (i + 2 < n) {
                sup2[i] = sup[i + 1];
                sup[i + 1] = 0.0;
            }
            std::swap(rhs[i], rhs[i + 1]);
        }
        if (diag[i] == 0.0)
            diag[i] = std::numeric_limits<double>::min();
        const double m = sub[i] / diag[i];
        diag[i + 1] -= m * sup[i];
        if (i + 2 < n) sup[i + 1] -= m * sup2[i];
        rhs[i + 1] -= m * rhs[i];
    }
    if (diag[n - 1] == 0.0)
        diag[n - 1] = std::numeric_limits<double>::min();
    rhs[n - 1] /= diag[n - 1];
    if (n >= 2)
        rhs[n - 2] = (rhs[n - 2] - sup[n - 2] * rhs[n - 1]) / diag[n - 2];
    for (std::size_t ip = n; ip >= 3; --ip) {
        const std::size_t i = ip - 3;
        rhs[i] = (rhs[i] - sup[i] * rhs[i + 1] - sup2[i] * rhs[i + 2]) /
                 diag[i];
    }
}

// Inverse iteration for the eigenvector of T at (accurate) eigenvalue lam.
// seed selects the initial profile's sign structure: number of half-waves.
inline std::vector<double> tridiag_eigenvector(const SymTridiag& T, double lam,
                                               int half_waves) {
    const std::size_t n = T.size();
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(T.diag[i]));
    // tiny shift keeps the factorization finite at an exact eigenvalue
    const double sigma = lam + 1e-13 * std::max(scale, 1.0);
    std::vector<double> x(n);
    const double pi = std::acos(-1.0);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = std::sin(pi * half_waves * (i + 0.5) / n) + 1e-3;
    for (int pass = 0; pass < 3; ++pass) {
        std::vector<double> sub(T.off.begin(), T.off.end());
        std::vector<double> sup(T.off.begin(), T.off.end());
        std::vector<double> d(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = T.diag[i] - sigma;
        tridiag_solve_pivoting(sub, d, sup, x);
        double nrm = 0.0;
        for (double v : x) nrm += v * v;
        nrm = std::sqrt(nrm);
        if (!(nrm > 0.0) || !std::isfinite(nrm))
            throw std::runtime_error("inverse iteration breakdown");
        for (double& v : x) v /= nrm;
    }
    return x;
}

} // namespace spectral_bounds::detail
