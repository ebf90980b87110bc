#ifndef QFILT_OBSERVABLES_HPP
#define QFILT_OBSERVABLES_HPP

#include <complex>

#include "qfilt/operators.hpp"
#include "qfilt/steady_state.hpp"

namespace qfilt {

struct ObservableSet {
    double n_a = 0.0;      // mean cavity photon number
    double n_sigma = 0.0;  // excited-state probability
    double J = 0.0;        // energy flow expectation
    double beta = 0.0;     // efficiency Omega*J / (gamma_diss * n_sigma)
    double g2_full = 0.0;
};

std::complex<double> expectation(const DensityMatrix& state, const ComplexMatrix& op);

// <a_dag a_dag a a> / <a_dag a>^2. Throws InsufficientPhotons when the
// scale-normalized photon number sits below 1e-14 (the 0/0 regime at
// Omega = 0 or with the pump off).
double g2_full(const DensityMatrix& state, const SystemOperators& ops);

// beta = Omega * <flow_op> / (gamma_diss * <n_sigma_op>).
double beta_efficiency(const DensityMatrix& state, const ModelParams& p,
                       const SystemOperators& ops);

} // namespace qfilt

#endif
