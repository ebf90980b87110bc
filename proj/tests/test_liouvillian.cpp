#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "qfilt/errors.hpp"
#include "qfilt/liouvillian.hpp"
#include "qfilt/operators.hpp"

using namespace qfilt;

namespace {

Eigen::Index idx(int n_max, int tls, int n) { return tls * (n_max + 1) + n; }

// Direct matrix-form right-hand side of the master equation, written without
// any superoperator machinery. Used as the independent construction path.
Eigen::MatrixXcd rhs_direct(const ModelParams& p, const SystemOperators& ops,
                            const Eigen::MatrixXcd& rho) {
    const std::complex<double> i1(0.0, 1.0);
    const Eigen::MatrixXcd h = build_hamiltonian(p, ops);
    Eigen::MatrixXcd d = -i1 * (h * rho - rho * h);

    auto lindblad = [&](double rate, const Eigen::MatrixXcd& c) {
        const Eigen::MatrixXcd cc = c.adjoint() * c;
        d += 0.5 * rate * (2.0 * c * rho * c.adjoint() - cc * rho - rho * cc);
    };
    lindblad(p.gamma_diss, ops.sigma);
    lindblad(p.gamma_a, ops.a);
    lindblad(p.gamma_pump, ops.sigma_dag);
    d += 0.25 * p.gamma_deph * (ops.sigma_z * rho * ops.sigma_z - rho);
    return d;
}

Eigen::MatrixXcd random_hermitian(Eigen::Index d, std::mt19937& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            m(i, j) = std::complex<double>(g(rng), g(rng));
    return 0.5 * (m + m.adjoint().eval());
}

} // namespace

TEST_CASE("vectorization round trip and kron identity") {
    std::mt19937 rng(11);
    const Eigen::Index d = 5;
    const Eigen::MatrixXcd a = random_hermitian(d, rng);
    const Eigen::MatrixXcd b = random_hermitian(d, rng);
    const Eigen::MatrixXcd rho = random_hermitian(d, rng);

    CHECK(unvectorize(vectorize(rho), d).isApprox(rho));
    // vec(A rho B) = kron(B^T, A) vec(rho)
    const Eigen::VectorXcd lhs = vectorize(a * rho * b);
    const Eigen::VectorXcd via_kron = kron(b.transpose(), a) * vectorize(rho);
    CHECK((lhs - via_kron).norm() < 1e-12 * lhs.norm());
}

TEST_CASE("generator equals the matrix-form master equation, column by column") {
    ModelParams p;
    p.n_max = 2;
    p.omega_rabi = 2.3;
    p.gamma_a = 0.7;
    const auto ops = build_system_operators(p.n_max);
    const auto L = build_liouvillian(p, ops);
    const Eigen::Index d = ops.dim;

    Eigen::MatrixXcd rebuilt(d * d, d * d);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < d; ++i) {
            Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(d, d);
            basis(i, j) = 1.0;
            rebuilt.col(j * d + i) = vectorize(rhs_direct(p, ops, basis));
        }
    CHECK((L.matrix - rebuilt).cwiseAbs().maxCoeff() <
          1e-12 * L.matrix.cwiseAbs().maxCoeff());
}

TEST_CASE("trace preservation row identity") {
    ModelParams p;
    p.n_max = 3;
    p.omega_rabi = 4.2;
    p.gamma_a = 11.0;
    const auto ops = build_system_operators(p.n_max);
    const auto L = build_liouvillian(p, ops);
    const Eigen::VectorXcd vec_id =
        vectorize(Eigen::MatrixXcd::Identity(ops.dim, ops.dim));
    CHECK((vec_id.adjoint() * L.matrix).norm() <
          1e-12 * L.matrix.cwiseAbs().maxCoeff());
}

TEST_CASE("dark state without pumping") {
    ModelParams p;
    p.n_max = 2;
    p.omega_rabi = 0.0;
    p.gamma_pump = 0.0;
    const auto ops = build_system_operators(p.n_max);
    const auto L = build_liouvillian(p, ops);

    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(ops.dim, ops.dim);
    rho(idx(2, 0, 0), idx(2, 0, 0)) = 1.0;
    CHECK((L.matrix * vectorize(rho)).norm() < 1e-14 * L.matrix.norm());
}

TEST_CASE("pure dephasing damps coherence at gamma_deph/2, populations frozen") {
    ModelParams p;
    p.n_max = 1;
    p.gamma_diss = 1.0;  // the unit; removed from the generator by hand below
    p.gamma_pump = 0.0;
    p.gamma_a = 0.0;
    p.omega_rabi = 0.0;
    p.gamma_deph = 8.0;
    const auto ops = build_system_operators(p.n_max);

    // keep only the dephasing channel
    ModelParams q = p;
    q.gamma_diss = 0.0;
    const auto L = build_liouvillian(q, ops);

    std::mt19937 rng(5);
    Eigen::MatrixXcd rho = random_hermitian(ops.dim, rng);
    const Eigen::MatrixXcd d = apply_generator(L, rho);
    const auto ge = std::make_pair(idx(1, 0, 0), idx(1, 1, 0));
    const std::complex<double> expected =
        -0.5 * p.gamma_deph * rho(ge.first, ge.second);
    CHECK(std::abs(d(ge.first, ge.second) - expected) <
          1e-12 * std::abs(expected));
    for (Eigen::Index k = 0; k < ops.dim; ++k)
        CHECK(std::abs(d(k, k)) < 1e-14);
}

TEST_CASE("apply_generator basics") {
    ModelParams p;
    p.n_max = 1;
    p.gamma_pump = 0.0;
    p.gamma_deph = 0.0;
    p.gamma_a = 0.0;
    p.omega_rabi = 0.0;
    const auto ops = build_system_operators(p.n_max);
    const auto L = build_liouvillian(p, ops);

    // spontaneous decay of |e,0><e,0| at rate gamma_diss
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(ops.dim, ops.dim);
    rho(idx(1, 1, 0), idx(1, 1, 0)) = 1.0;
    const Eigen::MatrixXcd d = apply_generator(L, rho);
    CHECK(d(idx(1, 1, 0), idx(1, 1, 0)).real() ==
          doctest::Approx(-p.gamma_diss).epsilon(1e-14));

    CHECK_THROWS_AS(apply_generator(L, Eigen::MatrixXcd::Identity(3, 3)),
                    DimensionMismatch);
}

TEST_CASE("Hermiticity preservation and spectral contractivity") {
    ModelParams p;
    p.n_max = 2;
    p.omega_rabi = 3.0;
    p.gamma_a = 2.0;
    p.gamma_deph = 5.0;
    const auto ops = build_system_operators(p.n_max);
    const auto L = build_liouvillian(p, ops);

    std::mt19937 rng(17);
    for (int i = 0; i < 10; ++i) {
        const Eigen::MatrixXcd rho = random_hermitian(ops.dim, rng);
        const Eigen::MatrixXcd d = apply_generator(L, rho);
        CHECK((d - d.adjoint()).cwiseAbs().maxCoeff() <
              1e-12 * d.cwiseAbs().maxCoeff());
    }

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(L.matrix, false);
    const double max_real = es.eigenvalues().real().maxCoeff();
    CHECK(max_real < 1e-10 * L.matrix.norm());
}
