#include "qfilt/observables.hpp"

#include <cmath>

#include "qfilt/errors.hpp"

namespace qfilt {

std::complex<double> expectation(const DensityMatrix& state, const ComplexMatrix& op) {
    if (state.rho.rows() != op.rows() || state.rho.cols() != op.cols())
        throw DimensionMismatch("expectation: operator dimension mismatch");
    return (state.rho * op).trace();
}

double g2_full(const DensityMatrix& state, const SystemOperators& ops) {
    const double n_a = expectation(state, ops.n_a_op).real();
    const double s2 = state.photon_scale * state.photon_scale;
    // definedness is judged on the scale-normalized photon number: sectors
    // resolved by the scaled solve are meaningful even when n_a itself is
    // far below double-precision noise relative to trace(rho)
    if (n_a * s2 < 1e-14)
        throw InsufficientPhotons("g2_full: photon number below noise floor");
    const ComplexMatrix aa = ops.a * ops.a;
    const double num = expectation(state, ComplexMatrix(aa.adjoint() * aa)).real();
    return num / (n_a * n_a);
}

double beta_efficiency(const DensityMatrix& state, const ModelParams& p,
                       const SystemOperators& ops) {
    const double n_sigma = expectation(state, ops.n_sigma_op).real();
    if (n_sigma < 1e-14)
        throw UndefinedEfficiency("beta_efficiency: empty emitter");
    const double flow = expectation(state, ops.flow_op).real();
    return p.omega_rabi * flow / (p.gamma_diss * n_sigma);
}

} // namespace qfilt
