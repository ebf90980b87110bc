#include "qfilt/operators.hpp"

#include <cmath>
#include <complex>

#include "qfilt/errors.hpp"
#include "qfilt/liouvillian.hpp"

namespace qfilt {

SystemOperators build_system_operators(int n_max) {
    if (n_max < 1) throw BadTruncation("n_max must be at least 1");

    using namespace std::complex_literals;
    const Eigen::Index nf = n_max + 1;

    ComplexMatrix a_fock = ComplexMatrix::Zero(nf, nf);
    for (Eigen::Index n = 1; n < nf; ++n)
        a_fock(n - 1, n) = std::sqrt(static_cast<double>(n));

    ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
    ComplexMatrix idf = ComplexMatrix::Identity(nf, nf);

    ComplexMatrix sigma_tls = ComplexMatrix::Zero(2, 2);
    sigma_tls(0, 1) = 1.0;  // |g><e|
    ComplexMatrix sz_tls = ComplexMatrix::Zero(2, 2);
    sz_tls(0, 0) = -1.0;
    sz_tls(1, 1) = 1.0;

    SystemOperators ops;
    ops.n_max = n_max;
    ops.dim = 2 * nf;
    ops.a = kron(id2, a_fock);
    ops.a_dag = ops.a.adjoint();
    ops.sigma = kron(sigma_tls, idf);
    ops.sigma_dag = ops.sigma.adjoint();
    ops.sigma_z = kron(sz_tls, idf);
    ops.n_a_op = ops.a_dag * ops.a;
    ops.n_sigma_op = ops.sigma_dag * ops.sigma;
    ops.flow_op = 1i * (ops.a * ops.sigma_dag - ops.a_dag * ops.sigma);
    return ops;
}

ComplexMatrix build_hamiltonian(const ModelParams& p, const SystemOperators& ops) {
    return p.omega_rabi * (ops.a_dag * ops.sigma + ops.a * ops.sigma_dag);
}

} // namespace qfilt
