#ifndef QFILT_STEADY_STATE_HPP
#define QFILT_STEADY_STATE_HPP

#include <functional>

#include <Eigen/Dense>

#include "qfilt/liouvillian.hpp"
#include "qfilt/params.hpp"

namespace qfilt {

// Stationary (or propagated) state of the full model. `photon_scale` records
// the Fock-sector scaling factor used by the solver: photon amplitudes were
// resolved down to relative accuracy even when the absolute photon number is
// of order photon_scale^-2. Direct constructions leave it at 1.
struct DensityMatrix {
    Eigen::MatrixXcd rho;
    double photon_scale = 1.0;
};

// Entrywise Hermiticity (1e-12), unit trace (1e-12) and minimum eigenvalue
// >= -1e-10. Throws NoConvergence on violation.
void check_density(const DensityMatrix& state);

// Null-space solve of L with the trace constraint pinned. To keep relative
// accuracy in weakly populated photon sectors the system is first
// equilibrated by a diagonal Fock-sector scaling sized from the mean-field
// photon number. Uniqueness is gated on the second-smallest singular value
// of L exceeding 1e-8 times the largest.
DensityMatrix solve_steady(const LiouvillianMatrix& L, const ModelParams& p);

// Relative stationarity residual ||L vec(rho)|| / ||L||.
double steady_residual(const LiouvillianMatrix& L, const DensityMatrix& state);

// Validation integrator: adaptive explicit propagation of vec(rho).
DensityMatrix evolve(const LiouvillianMatrix& L, const DensityMatrix& rho0,
                     double t_final, double rtol = 1e-8, double atol = 1e-12);

struct TruncationReport {
    double value_at_n_max = 0.0;
    double value_at_double = 0.0;
    double abs_change = 0.0;
    double rel_change = 0.0;
};

using ObservableExtractor =
    std::function<double(const DensityMatrix&, const SystemOperators&)>;

// Recomputes a scalar observable of the steady state at n_max and 2*n_max.
TruncationReport check_truncation(const ModelParams& p,
                                  const ObservableExtractor& extract);

} // namespace qfilt

#endif
