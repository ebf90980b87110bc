#ifndef QFILT_PARAMS_HPP
#define QFILT_PARAMS_HPP

#include <complex>
#include <utility>

namespace qfilt {

// Physical parameter set in units of the emitter decay rate gamma_diss.
// The emitter and cavity are resonant; the absolute transition frequency
// drops out in the rotating frame and is not carried here.
struct ModelParams {
    double gamma_diss = 1.0;  // TLS decay rate (the unit)
    double gamma_pump = 0.1;  // incoherent pump rate
    double gamma_deph = 1e4;  // pure dephasing rate
    double gamma_a = 1.0;     // cavity linewidth
    double omega_rabi = 1.0;  // Rabi constant
    int n_max = 8;            // Fock-space photon cutoff
    double tol_steady = 1e-10;
    double tol_quad = 1e-10;

    // Gamma = (gamma_diss + gamma_pump + gamma_deph)/2, dipole relaxation rate
    double dipole_relaxation() const {
        return 0.5 * (gamma_diss + gamma_pump + gamma_deph);
    }
    // gamma = gamma_diss + gamma_pump, energy relaxation rate
    double energy_relaxation() const { return gamma_diss + gamma_pump; }
};

enum class Regime { WeakCoupling, StrongIncoherent, Coherent };

const char* to_string(Regime r);

// Checks all rates and the truncation, then rescales every rate so that
// gamma_diss = 1. Throws NegativeRate, ZeroDissipation, BadTruncation.
ModelParams validate_params(const ModelParams& raw);

// Weak coupling when 4*Omega < |2*Gamma - gamma_a|; coherent when
// Omega > 2*Gamma + gamma_a; strong-incoherent otherwise. Boundary ties
// (relative tolerance 1e-12) resolve toward the weaker regime.
Regime classify_regime(const ModelParams& p);

// Eigenvalues of the linear amplitude system for (a, sigma):
//   lambda = -(gamma_a/2 + Gamma)/2 +- sqrt(((gamma_a/2 - Gamma)/2)^2 - Omega^2)
std::pair<std::complex<double>, std::complex<double>>
coupling_eigenvalues(const ModelParams& p);

} // namespace qfilt

#endif
