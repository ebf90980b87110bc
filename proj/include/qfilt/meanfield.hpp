#ifndef QFILT_MEANFIELD_HPP
#define QFILT_MEANFIELD_HPP

#include <complex>
#include <iosfwd>
#include <vector>

#include "qfilt/params.hpp"

namespace qfilt {

// Rotating-frame expectation amplitudes <a>, <sigma>.
struct AmplitudeState {
    std::complex<double> a{0.0, 0.0};
    std::complex<double> sigma{0.0, 0.0};
};

struct EnergyState {
    double n_a = 0.0;
    double n_sigma = 0.0;
    double J = 0.0;
};

// Exact matrix-exponential propagation of the linear amplitude system.
AmplitudeState evolve_amplitudes(const ModelParams& p, const AmplitudeState& s0,
                                 double t);

// Unique stationary point of the 3x3 energy system. Throws SingularSystem.
EnergyState stationary_energy(const ModelParams& p);

// Adaptive explicit integration of the energy equations.
EnergyState evolve_energy(const ModelParams& p, const EnergyState& e0, double t);

// Trapezoid predictor-corrector solution of the population memory equation
// on the uniform grid t_k = k*h, k = 0..n_steps. Kernel values are
// precomputed on the grid; the convolution is windowed where the kernel has
// decayed below 1e-20 of its envelope. Second-order accurate in h.
// Throws StepTooLarge when h times the dominant rate exceeds 0.1.
std::vector<double> evolve_nsigma_volterra(const ModelParams& p, double n0,
                                           double h, int n_steps);

// Two-column CSV export (t,<name>) with 17-significant-digit values.
void write_time_series_csv(std::ostream& out, const char* value_name, double h,
                           const std::vector<double>& values);

} // namespace qfilt

#endif
