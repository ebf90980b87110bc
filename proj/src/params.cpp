#include "qfilt/params.hpp"

#include <cmath>
#include <complex>

#include "qfilt/errors.hpp"

namespace qfilt {

const char* to_string(Regime r) {
    switch (r) {
        case Regime::WeakCoupling: return "WeakCoupling";
        case Regime::StrongIncoherent: return "StrongIncoherent";
        case Regime::Coherent: return "Coherent";
    }
    return "?";
}

ModelParams validate_params(const ModelParams& raw) {
    if (raw.gamma_diss < 0 || raw.gamma_pump < 0 || raw.gamma_deph < 0 ||
        raw.gamma_a < 0 || raw.omega_rabi < 0)
        throw NegativeRate("all rates must be nonnegative");
    if (raw.gamma_diss == 0)
        throw ZeroDissipation("gamma_diss is the unit rate and must be positive");
    if (raw.n_max < 1)
        throw BadTruncation("n_max must be at least 1");

    ModelParams p = raw;
    const double u = raw.gamma_diss;
    p.gamma_diss = 1.0;
    p.gamma_pump /= u;
    p.gamma_deph /= u;
    p.gamma_a /= u;
    p.omega_rabi /= u;
    return p;
}

namespace {
// a <= b up to relative slack; used to push boundary cases toward the
// weaker regime.
bool leq_tol(double a, double b) {
    return a <= b + 1e-12 * std::max(std::abs(a), std::abs(b));
}
} // namespace

Regime classify_regime(const ModelParams& p) {
    const double Gamma = p.dipole_relaxation();
    const double four_omega = 4.0 * p.omega_rabi;
    const double split = std::abs(2.0 * Gamma - p.gamma_a);
    if (leq_tol(four_omega, split)) return Regime::WeakCoupling;
    const double coherent_edge = 2.0 * Gamma + p.gamma_a;
    if (!leq_tol(p.omega_rabi, coherent_edge)) return Regime::Coherent;
    return Regime::StrongIncoherent;
}

std::pair<std::complex<double>, std::complex<double>>
coupling_eigenvalues(const ModelParams& p) {
    const double Gamma = p.dipole_relaxation();
    const std::complex<double> mean = -0.5 * (0.5 * p.gamma_a + Gamma);
    const double half_gap = 0.5 * (0.5 * p.gamma_a - Gamma);
    const std::complex<double> disc =
        std::sqrt(std::complex<double>(half_gap * half_gap -
                                       p.omega_rabi * p.omega_rabi));
    return {mean + disc, mean - disc};
}

} // namespace qfilt
