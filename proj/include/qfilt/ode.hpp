#ifndef QFILT_ODE_HPP
#define QFILT_ODE_HPP

#include <algorithm>
#include <cmath>

#include "qfilt/errors.hpp"

namespace qfilt {

// Adaptive Dormand-Prince 5(4) step integrator. State is any Eigen-like
// vector type supporting +, scalar *, and .norm(). Throws StepFailure when
// the step size underflows.
template <class State, class Rhs>
State integrate_adaptive(Rhs&& rhs, State y, double t0, double t1,
                         double rtol = 1e-8, double atol = 1e-12) {
    if (t1 <= t0) return y;

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
    // difference between 5th and embedded 4th order weights
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                            e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;

    double t = t0;
    double h = (t1 - t0) / 100.0;
    State k1 = rhs(t, y);

    while (t < t1) {
        h = std::min(h, t1 - t);
        if (h < 1e-14 * (std::abs(t) + 1.0))
            throw StepFailure("integrate_adaptive: step size underflow");

        State k2 = rhs(t + c2 * h, State(y + h * (a21 * k1)));
        State k3 = rhs(t + c3 * h, State(y + h * (a31 * k1 + a32 * k2)));
        State k4 = rhs(t + c4 * h, State(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
        State k5 = rhs(t + c5 * h,
                       State(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
        State k6 = rhs(t + h, State(y + h * (a61 * k1 + a62 * k2 + a63 * k3 +
                                             a64 * k4 + a65 * k5)));
        State y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        State k7 = rhs(t + h, y5);
        State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        const double scale = atol + rtol * std::max(y.norm(), y5.norm());
        const double enorm = err.norm() / scale;

        if (enorm <= 1.0) {
            t += h;
            y = std::move(y5);
            k1 = std::move(k7);  // FSAL
        }
        const double grow = (enorm > 0.0)
                                ? 0.9 * std::pow(enorm, -0.2)
                                : 5.0;
        h *= std::clamp(grow, 0.2, 5.0);
    }
    return y;
}

} // namespace qfilt

#endif
