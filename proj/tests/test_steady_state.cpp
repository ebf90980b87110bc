#include <doctest.h>

#include <Eigen/Dense>

#include "qfilt/errors.hpp"
#include "qfilt/liouvillian.hpp"
#include "qfilt/observables.hpp"
#include "qfilt/operators.hpp"
#include "qfilt/steady_state.hpp"

using namespace qfilt;

namespace {

Eigen::Index idx(int n_max, int tls, int n) { return tls * (n_max + 1) + n; }

DensityMatrix solve(const ModelParams& p) {
    const auto ops = build_system_operators(p.n_max);
    return solve_steady(build_liouvillian(p, ops), p);
}

} // namespace

TEST_CASE("no pump: the vacuum ground state is stationary") {
    ModelParams p;
    p.gamma_pump = 0.0;
    p.n_max = 4;
    const auto rho = solve(p);
    CHECK(rho.rho(idx(4, 0, 0), idx(4, 0, 0)).real() ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rho.rho.cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("decoupled cavity: two-level rate balance") {
    ModelParams p;
    p.omega_rabi = 0.0;
    const auto ops = build_system_operators(p.n_max);
    const auto rho = solve_steady(build_liouvillian(p, ops), p);
    CHECK(expectation(rho, ops.n_sigma_op).real() ==
          doctest::Approx(1.0 / 11.0).epsilon(1e-12));
    CHECK(std::abs(expectation(rho, ops.n_a_op).real()) < 1e-14);
}

TEST_CASE("steady solve agrees with long-time integration at the defaults") {
    ModelParams p;  // Omega = 1, gamma_a = 1
    const auto ops = build_system_operators(p.n_max);
    const auto L = build_liouvillian(p, ops);
    const auto direct = solve_steady(L, p);

    DensityMatrix rho0;
    rho0.rho = Eigen::MatrixXcd::Zero(ops.dim, ops.dim);
    rho0.rho(idx(p.n_max, 0, 0), idx(p.n_max, 0, 0)) = 1.0;
    // slowest relaxation is gamma = 1.1; t = 20 leaves transients < 1e-9
    const auto evolved = evolve(L, rho0, 20.0, 1e-9, 1e-13);

    // trace distance
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(direct.rho - evolved.rho);
    CHECK(0.5 * es.eigenvalues().cwiseAbs().sum() < 1e-8);

    CHECK(expectation(direct, ops.n_sigma_op).real() ==
          doctest::Approx(expectation(evolved, ops.n_sigma_op).real())
              .epsilon(1e-8));
    CHECK(expectation(direct, ops.n_a_op).real() ==
          doctest::Approx(expectation(evolved, ops.n_a_op).real()).epsilon(1e-6));
}

TEST_CASE("fixed point is independent of the initial condition") {
    ModelParams p;
    p.gamma_deph = 10.0;  // non-stiff variant keeps the integrations cheap
    p.n_max = 6;
    const auto ops = build_system_operators(p.n_max);
    const auto L = build_liouvillian(p, ops);

    DensityMatrix ground, excited;
    ground.rho = Eigen::MatrixXcd::Zero(ops.dim, ops.dim);
    ground.rho(idx(6, 0, 0), idx(6, 0, 0)) = 1.0;
    excited.rho = Eigen::MatrixXcd::Zero(ops.dim, ops.dim);
    excited.rho(idx(6, 1, 1), idx(6, 1, 1)) = 1.0;

    const auto r1 = evolve(L, ground, 40.0, 1e-10, 1e-14);
    const auto r2 = evolve(L, excited, 40.0, 1e-10, 1e-14);
    CHECK((r1.rho - r2.rho).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("evolve basics") {
    ModelParams p;
    p.n_max = 1;
    p.gamma_pump = 0.0;
    p.gamma_deph = 0.0;
    p.omega_rabi = 0.0;
    const auto ops = build_system_operators(p.n_max);
    const auto L = build_liouvillian(p, ops);

    DensityMatrix rho0;
    rho0.rho = Eigen::MatrixXcd::Zero(ops.dim, ops.dim);
    rho0.rho(idx(1, 1, 0), idx(1, 1, 0)) = 1.0;

    CHECK(evolve(L, rho0, 0.0).rho.isApprox(rho0.rho));

    // exponential decay law over one lifetime
    ModelParams q = p;
    q.gamma_a = 0.0;
    const auto Lq = build_liouvillian(q, ops);
    const auto rho1 = evolve(Lq, rho0, 1.0, 1e-10, 1e-14);
    CHECK(rho1.rho(idx(1, 1, 0), idx(1, 1, 0)).real() ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-8));
}

TEST_CASE("accepted solves satisfy the density-matrix contract") {
    ModelParams p;
    p.omega_rabi = 5.0;
    p.gamma_a = 100.0;
    const auto ops = build_system_operators(p.n_max);
    const auto L = build_liouvillian(p, ops);
    const auto rho = solve_steady(L, p);
    check_density(rho);  // throws on violation
    CHECK(steady_residual(L, rho) <= p.tol_steady);

    // truncation guard: top Fock level essentially empty
    double top = 0.0;
    for (int tls = 0; tls < 2; ++tls)
        top += rho.rho(idx(p.n_max, tls, p.n_max), idx(p.n_max, tls, p.n_max)).real();
    CHECK(top < 1e-8);
}

TEST_CASE("truncation report converges at the defaults and flags n_max = 1") {
    ModelParams p;
    auto extract_g2 = [](const DensityMatrix& rho, const SystemOperators& ops) {
        return g2_full(rho, ops);
    };
    const auto rep = check_truncation(p, extract_g2);
    CHECK(rep.abs_change < 1e-6);

    ModelParams bad;
    bad.n_max = 1;
    bad.gamma_deph = 1.0;
    bad.omega_rabi = 50.0;
    bad.gamma_a = 1.0;
    auto extract_na = [](const DensityMatrix& rho, const SystemOperators& ops) {
        return expectation(rho, ops.n_a_op).real();
    };
    const auto rep2 = check_truncation(bad, extract_na);
    CHECK(rep2.rel_change > 1e-3);
}
