#ifndef QFILT_OPERATORS_HPP
#define QFILT_OPERATORS_HPP

#include <Eigen/Dense>

#include "qfilt/params.hpp"

namespace qfilt {

using ComplexMatrix = Eigen::MatrixXcd;

// Dense operators on the composite space TLS (x) Fock(n_max).
//
// Basis ordering is TLS-major: index = tls*(n_max+1) + n with tls 0 = ground,
// 1 = excited, so matrices are Kronecker products kron(tls_part, fock_part).
struct SystemOperators {
    int n_max = 0;
    Eigen::Index dim = 0;  // 2*(n_max+1)
    ComplexMatrix a, a_dag;          // cavity lowering / raising
    ComplexMatrix sigma, sigma_dag;  // TLS lowering / raising
    ComplexMatrix sigma_z;           // population inversion, [sigma_dag, sigma]
    ComplexMatrix n_a_op;            // a_dag * a
    ComplexMatrix n_sigma_op;        // sigma_dag * sigma
    // Energy flow from the TLS into the cavity, i(a sigma_dag - a_dag sigma).
    // Hermitian; its stationary expectation is positive when the emitter
    // feeds the cavity.
    ComplexMatrix flow_op;
};

SystemOperators build_system_operators(int n_max);

// Rotating-frame resonant Jaynes-Cummings interaction,
// H/hbar = Omega (a_dag sigma + a sigma_dag).
ComplexMatrix build_hamiltonian(const ModelParams& p, const SystemOperators& ops);

} // namespace qfilt

#endif
