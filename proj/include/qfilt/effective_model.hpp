#ifndef QFILT_EFFECTIVE_MODEL_HPP
#define QFILT_EFFECTIVE_MODEL_HPP

#include <complex>

#include "qfilt/params.hpp"

namespace qfilt {

// Modified relaxation rates of the effective isolated emitter that absorbs
// the cavity back-action.
struct EffectiveRates {
    double gamma_diss_eff = 0.0;
    double gamma_pump_eff = 0.0;
    double gamma_deph_eff = 0.0;

    double Gamma_eff() const {
        return 0.5 * (gamma_diss_eff + gamma_pump_eff + gamma_deph_eff);
    }
    double gamma_eff() const { return gamma_diss_eff + gamma_pump_eff; }
};

struct KernelSample {
    double t = 0.0;
    double value = 0.0;
};

// Throws DegenerateFilter when gamma_a = 0 with Omega > 0.
EffectiveRates effective_rates(const ModelParams& p);

// Analytical g2(0) of the filtered effective emitter,
//   2 gamma_eff (2 Gamma_eff + gamma_a) /
//   ((gamma_eff + gamma_a)(2 Gamma_eff + 3 gamma_a)).
double g2_eff(const ModelParams& p);

// Same closed form with the bare rates (filter back-action neglected).
double g2_neglect(const ModelParams& p);

// Memory kernel
//   K(t) = e^{-(3 gamma_a + 2 Gamma) t / 4} sinh(q t / 2) / (q / 2),
//   q = sqrt((gamma_a/2 - Gamma)^2 - 16 Omega^2),
// evaluated in complex arithmetic (real result on both branches), with a
// series guard near q t = 0. Throws NegativeTime for t < 0.
KernelSample kernel_K(const ModelParams& p, double t);

// 2 / (gamma_a (2 Gamma + gamma_a) + 8 Omega^2), the Laplace transform of K
// at zero.
double kernel_integral_closed_form(const ModelParams& p);

// Adaptive quadrature of K over [0, inf), truncated where the kernel's true
// asymptotic envelope e^{-(p - Re q / 2) t} drops below 1e-20.
double kernel_integral_numeric(const ModelParams& p);

// Upper truncation time used by kernel_integral_numeric (exposed for export).
double kernel_support_time(const ModelParams& p);

// Fixed point of the Markovian population equation, gamma_pump_eff/gamma_eff.
double nsigma_markov_stationary(const ModelParams& p);

// Lorentz transmission F(delta) = (i gamma_a / 2) / (delta + i gamma_a / 2).
std::complex<double> filter_transmission(const ModelParams& p, double detuning);

} // namespace qfilt

#endif
