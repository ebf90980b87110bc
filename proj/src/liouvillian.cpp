#include "qfilt/liouvillian.hpp"

#include <complex>

#include "qfilt/errors.hpp"

namespace qfilt {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& m) {
    // Eigen stores column-major, so this is column stacking.
    return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, Eigen::Index dim) {
    if (v.size() != dim * dim)
        throw DimensionMismatch("unvectorize: size is not dim^2");
    return Eigen::Map<const Eigen::MatrixXcd>(v.data(), dim, dim);
}

namespace {

// (rate/2) (2 c rho c_dag - c_dag c rho - rho c_dag c), vectorized.
Eigen::MatrixXcd dissipator(double rate, const Eigen::MatrixXcd& c) {
    const Eigen::Index d = c.rows();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
    const Eigen::MatrixXcd cdc = c.adjoint() * c;
    return 0.5 * rate *
           (2.0 * kron(c.conjugate(), c) - kron(id, cdc) -
            kron(cdc.transpose(), id));
}

} // namespace

LiouvillianMatrix build_liouvillian(const ModelParams& p, const SystemOperators& ops) {
    using namespace std::complex_literals;
    const Eigen::Index d = ops.dim;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
    const Eigen::MatrixXcd h = build_hamiltonian(p, ops);

    LiouvillianMatrix L;
    L.dim_rho = d;
    L.matrix = -1i * (kron(id, h) - kron(h.transpose(), id));
    L.matrix += dissipator(p.gamma_diss, ops.sigma);
    L.matrix += dissipator(p.gamma_a, ops.a);
    L.matrix += dissipator(p.gamma_pump, ops.sigma_dag);
    // dephasing keeps the sigma_z form with the /4 prefactor
    L.matrix += 0.25 * p.gamma_deph *
                (kron(ops.sigma_z.transpose(), ops.sigma_z) -
                 Eigen::MatrixXcd::Identity(d * d, d * d));
    return L;
}

Eigen::MatrixXcd apply_generator(const LiouvillianMatrix& L, const Eigen::MatrixXcd& rho) {
    if (rho.rows() != L.dim_rho || rho.cols() != L.dim_rho)
        throw DimensionMismatch("apply_generator: state dimension mismatch");
    return unvectorize(L.matrix * vectorize(rho), L.dim_rho);
}

} // namespace qfilt
