#pragma once

// Adaptive Dormand-Prince 5(4) integration for the 2-component shooting
// systems.  The step-size controller takes an optional per-position cap so
// callers can key the step to the drift magnitude near kernel singularities.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <type_traits>

namespace spectral_bounds::detail {

using Vec2 = std::array<double, 2>;

struct OdeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Rk45Options {
    double rel_tol = 1e-10;
    double abs_tol = 1e-13;
    long max_steps = 4'000'000;
};

// Integrates y' = f(t, y) from t0 to t1 (t0 < t1).  step_cap(t), when
// provided, bounds the step taken from position t.  observer, when provided,
// is called at t0 and after every accepted step.
template <class Rhs, class StepCap = std::nullptr_t,
          class Observer = std::nullptr_t>
Vec2 rk45_integrate(Rhs&& f, double t0, double t1, Vec2 y,
                    const Rk45Options& opt = {}, StepCap&& step_cap = nullptr,
                    Observer&& observer = nullptr) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                            c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113,
                            b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                            e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640,
                            e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    const double span = t1 - t0;
    if (!(span > 0.0)) {
        if (span == 0.0) return y;
        throw std::invalid_argument("rk45: t1 must exceed t0");
    }
    double t = t0;
    double h = span / 64.0;
    auto cap_at = [&](double tt) -> double {
        if constexpr (!std::is_same_v<std::decay_t<StepCap>, std::nullptr_t>)
            return step_cap(tt);
        else
            return span;
    };
    auto notify = [&](double tt, const Vec2& yy, const Vec2& dy) {
        if constexpr (!std::is_same_v<std::decay_t<Observer>, std::nullptr_t>)
            observer(tt, yy, dy);
    };

    Vec2 k1 = f(t, y);
    notify(t, y, k1);
    long steps = 0;
    while (t < t1) {
        h = std::min(h, cap_at(t));
        bool last = false;
        if (h >= t1 - t) {
            h = t1 - t;
            last = true;
        }
        if ((!last && h < 1e-15 * span) || ++steps > opt.max_steps)
            throw OdeError("rk45: step size underflow (stiff drift; enable "
                           "the singular-limit path)");
        Vec2 k2, k3, k4, k5, k6, k7, yt, y5;
        auto stage = [&](double ci, auto&&... terms) {
            for (int i = 0; i < 2; ++i)
                yt[i] = y[i] + h * (terms[i] + ...);
            return f(t + ci * h, yt);
        };
        k2 = stage(c2, Vec2{a21 * k1[0], a21 * k1[1]});
        k3 = stage(c3, Vec2{a31 * k1[0], a31 * k1[1]},
                   Vec2{a32 * k2[0], a32 * k2[1]});
        k4 = stage(c4, Vec2{a41 * k1[0], a41 * k1[1]},
                   Vec2{a42 * k2[0], a42 * k2[1]},
                   Vec2{a43 * k3[0], a43 * k3[1]});
        k5 = stage(c5, Vec2{a51 * k1[0], a51 * k1[1]},
                   Vec2{a52 * k2[0], a52 * k2[1]},
                   Vec2{a53 * k3[0], a53 * k3[1]},
                   Vec2{a54 * k4[0], a54 * k4[1]});
        k6 = stage(1.0, Vec2{a61 * k1[0], a61 * k1[1]},
                   Vec2{a62 * k2[0], a62 * k2[1]},
                   Vec2{a63 * k3[0], a63 * k3[1]},
                   Vec2{a64 * k4[0], a64 * k4[1]},
                   Vec2{a65 * k5[0], a65 * k5[1]});
        for (int i = 0; i < 2; ++i)
            y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                                b5 * k5[i] + b6 * k6[i]);
        k7 = f(t + h, y5);
        double err = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                   e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc =
                opt.abs_tol +
                opt.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
            err += (ei / sc) * (ei / sc);
        }
        err = std::sqrt(0.5 * err);
        if (err <= 1.0) {
            t = last ? t1 : t + h;
            y = y5;
            k1 = k7; // FSAL
            notify(t, y, k1);
        }
        const double factor =
            std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 5.0);
        h *= factor;
    }
    return y;
}

} // namespace spectral_bounds::detail
