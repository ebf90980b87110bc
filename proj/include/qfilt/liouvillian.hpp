#ifndef QFILT_LIOUVILLIAN_HPP
#define QFILT_LIOUVILLIAN_HPP

#include <Eigen/Dense>

#include "qfilt/operators.hpp"
#include "qfilt/params.hpp"

namespace qfilt {

// Vectorized Lindblad generator.
//
// Vectorization is column-stacking: vec(rho) stacks the columns of rho, so
// vec(A rho B) = kron(B^T, A) vec(rho). That identity is the normative
// definition of every superoperator block in `matrix`.
struct LiouvillianMatrix {
    Eigen::Index dim_rho = 0;
    Eigen::MatrixXcd matrix;  // dim_rho^2 x dim_rho^2
};

// Kronecker product, row-index convention matching column-stacking above.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, Eigen::Index dim);

// Full generator: -i[H, rho] plus decay (sigma, gamma_diss), cavity decay
// (a, gamma_a), pump (sigma_dag, gamma_pump), and pure dephasing in the
// sigma_z form with the /4 prefactor.
LiouvillianMatrix build_liouvillian(const ModelParams& p, const SystemOperators& ops);

// d(rho)/dt for a given state.
Eigen::MatrixXcd apply_generator(const LiouvillianMatrix& L, const Eigen::MatrixXcd& rho);

} // namespace qfilt

#endif
