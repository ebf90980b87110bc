#include "qfilt/effective_model.hpp"

#include <cmath>
#include <complex>

#include "qfilt/errors.hpp"

namespace qfilt {

namespace {

// gamma_a (2 Gamma + gamma_a), the recurring filter-bandwidth combination
double bandwidth_product(const ModelParams& p) {
    return p.gamma_a * (2.0 * p.dipole_relaxation() + p.gamma_a);
}

void require_filter(const ModelParams& p) {
    if (p.gamma_a <= 0)
        throw DegenerateFilter("gamma_a must be positive (zero-width filter)");
}

double g2_closed_form(double gamma, double Gamma, double gamma_a) {
    return 2.0 * gamma * (2.0 * Gamma + gamma_a) /
           ((gamma + gamma_a) * (2.0 * Gamma + 3.0 * gamma_a));
}

} // namespace

EffectiveRates effective_rates(const ModelParams& p) {
    EffectiveRates r{p.gamma_diss, p.gamma_pump, p.gamma_deph};
    const double om2 = p.omega_rabi * p.omega_rabi;
    if (om2 == 0.0) return r;
    require_filter(p);

    const double P = bandwidth_product(p);
    const double den = P + 8.0 * om2;
    r.gamma_diss_eff = p.gamma_diss + 4.0 * om2 * (p.gamma_a - p.gamma_diss) / den;
    r.gamma_pump_eff = p.gamma_pump * (P + 4.0 * om2) / den;
    r.gamma_deph_eff =
        p.gamma_deph +
        4.0 * om2 *
            (p.gamma_a * (2.0 * p.dipole_relaxation() + p.energy_relaxation()) +
             8.0 * om2) /
            (p.gamma_a * den);
    return r;
}

double g2_eff(const ModelParams& p) {
    require_filter(p);
    const EffectiveRates r = effective_rates(p);
    return g2_closed_form(r.gamma_eff(), r.Gamma_eff(), p.gamma_a);
}

double g2_neglect(const ModelParams& p) {
    require_filter(p);
    return g2_closed_form(p.energy_relaxation(), p.dipole_relaxation(), p.gamma_a);
}

namespace {

struct KernelParts {
    double decay = 0.0;            // p = (3 gamma_a + 2 Gamma)/4
    std::complex<double> q{0, 0};  // sqrt((gamma_a/2 - Gamma)^2 - 16 Omega^2)
};

KernelParts kernel_parts(const ModelParams& p) {
    KernelParts kp;
    const double Gamma = p.dipole_relaxation();
    kp.decay = 0.25 * (3.0 * p.gamma_a + 2.0 * Gamma);
    const double gap = 0.5 * p.gamma_a - Gamma;
    kp.q = std::sqrt(std::complex<double>(
        gap * gap - 16.0 * p.omega_rabi * p.omega_rabi));
    return kp;
}

double kernel_value(const KernelParts& kp, double t) {
    const std::complex<double> half_q = 0.5 * kp.q;
    if (std::abs(kp.q) * t < 1e-6) {
        // sinh(x)/x series to dodge cancellation near q t = 0
        const std::complex<double> x = half_q * t;
        return (t * std::exp(-kp.decay * t) * (1.0 + x * x / 6.0)).real();
    }
    // grouped exponents stay bounded on both branches
    const std::complex<double> e_plus = std::exp((half_q - kp.decay) * t);
    const std::complex<double> e_minus = std::exp((-half_q - kp.decay) * t);
    return ((e_plus - e_minus) / kp.q).real();
}

// Asymptotic envelope rate p - Re(q)/2; positive for any valid parameters.
double kernel_decay_rate(const KernelParts& kp) {
    return kp.decay - 0.5 * kp.q.real();
}

// Adaptive Simpson on [a, b].
template <class F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
double integrate(const F& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

} // namespace

KernelSample kernel_K(const ModelParams& p, double t) {
    if (t < 0) throw NegativeTime("kernel_K: t must be nonnegative");
    return {t, kernel_value(kernel_parts(p), t)};
}

double kernel_integral_closed_form(const ModelParams& p) {
    require_filter(p);
    return 2.0 /
           (bandwidth_product(p) + 8.0 * p.omega_rabi * p.omega_rabi);
}

double kernel_support_time(const ModelParams& p) {
    require_filter(p);
    return 46.0 / kernel_decay_rate(kernel_parts(p));  // e^-46 ~ 1e-20
}

double kernel_integral_numeric(const ModelParams& p) {
    require_filter(p);
    const KernelParts kp = kernel_parts(p);
    auto f = [&kp](double t) { return kernel_value(kp, t); };
    const double tol = p.tol_quad * kernel_integral_closed_form(p);

    if (kp.q.imag() != 0.0) {
        // oscillatory branch: K(t + Th) = -e^{-p Th} K(t) exactly over a
        // half oscillation period, so the tail sums as a geometric series
        // with ratio -e^{-p Th}. The half-period integrand is single-signed,
        // so there is no cancellation, and this sidesteps quadrature over
        // the (possibly millions of) periods under a slowly decaying
        // envelope.
        const double t_half = 2.0 * M_PI / std::abs(kp.q.imag());
        const double denom = 1.0 + std::exp(-kp.decay * t_half);
        const double t_end = std::min(t_half, 46.0 / kp.decay);
        const double t_peak = std::min(t_end, 8.0 / kp.decay);
        double sum = integrate(f, 0.0, t_peak, 0.5 * tol * denom);
        double a = t_peak;
        while (a < t_end) {
            const double b = std::min(2.0 * a, t_end);
            sum += integrate(f, a, b, 0.1 * tol * denom);
            a = b;
        }
        return sum / denom;
    }

    const double t_max = 46.0 / kernel_decay_rate(kp);
    // split: the kernel peaks within a few 1/p of the origin
    const double t_peak = std::min(t_max, 8.0 / kp.decay);
    double sum = integrate(f, 0.0, t_peak, 0.5 * tol);
    if (t_peak < t_max) {
        double a = t_peak;
        while (a < t_max) {
            const double b = std::min(2.0 * a, t_max);
            sum += integrate(f, a, b, 0.1 * tol);
            a = b;
        }
    }
    return sum;
}

double nsigma_markov_stationary(const ModelParams& p) {
    const EffectiveRates r = effective_rates(p);
    return r.gamma_pump_eff / r.gamma_eff();
}

std::complex<double> filter_transmission(const ModelParams& p, double detuning) {
    require_filter(p);
    const std::complex<double> half_width(0.0, 0.5 * p.gamma_a);
    return half_width / (detuning + half_width);
}

} // namespace qfilt
