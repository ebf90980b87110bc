#include "qfilt/steady_state.hpp"

#include <cmath>
#include <complex>

#include <Eigen/SVD>

#include "qfilt/errors.hpp"
#include "qfilt/meanfield.hpp"
#include "qfilt/observables.hpp"
#include "qfilt/ode.hpp"

namespace qfilt {

void check_density(const DensityMatrix& state) {
    const auto& rho = state.rho;
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw NoConvergence("density matrix is not Hermitian");
    if (std::abs(rho.trace() - std::complex<double>(1.0, 0.0)) > 1e-12)
        throw NoConvergence("density matrix trace differs from 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw NoConvergence("density matrix has a negative eigenvalue");
}

namespace {

// Diagonal Fock-sector scale s^n per basis index. s = 1/sqrt(n_a_mf) keeps
// the n-photon sectors of the scaled state O(1) so the LU solve resolves
// them with relative rather than absolute accuracy.
Eigen::VectorXd sector_scales(const ModelParams& p, Eigen::Index dim) {
    const Eigen::Index nf = p.n_max + 1;
    double s = 1.0;
    if (p.omega_rabi > 0 && p.gamma_a > 0) {
        const double na_mf = stationary_energy(p).n_a;
        if (na_mf > 0 && na_mf < 1) {
            s = 1.0 / std::sqrt(na_mf);
            s = std::min(s, std::pow(10.0, 250.0 / (2.0 * p.n_max)));
        }
    }
    Eigen::VectorXd d(dim);
    for (Eigen::Index k = 0; k < dim; ++k)
        d(k) = std::pow(s, static_cast<double>(k % nf));
    return d;
}

} // namespace

DensityMatrix solve_steady(const LiouvillianMatrix& L, const ModelParams& p) {
    const Eigen::Index d = L.dim_rho;
    if (d != 2 * (p.n_max + 1))
        throw DimensionMismatch("solve_steady: params and generator disagree");
    const Eigen::Index d2 = d * d;

    const Eigen::VectorXd scale = sector_scales(p, d);
    Eigen::VectorXd w(d2);
    for (Eigen::Index col = 0; col < d; ++col)
        for (Eigen::Index row = 0; row < d; ++row)
            w(col * d + row) = scale(row) * scale(col);

    // similarity-scaled generator, then pin the trace in place of the
    // vacuum-population balance row
    Eigen::MatrixXcd M = w.cast<std::complex<double>>().asDiagonal() * L.matrix *
                         w.cwiseInverse().cast<std::complex<double>>().asDiagonal();
    M.row(0).setZero();
    for (Eigen::Index k = 0; k < d; ++k)
        M(0, k * d + k) = 1.0 / (scale(k) * scale(k));

    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(d2);
    rhs(0) = 1.0;
    Eigen::VectorXcd x = Eigen::PartialPivLU<Eigen::MatrixXcd>(M).solve(rhs);
    x.array() /= w.array();

    DensityMatrix state;
    state.rho = unvectorize(x, d);
    state.rho = 0.5 * (state.rho + state.rho.adjoint()).eval();
    state.rho /= state.rho.trace().real();
    state.photon_scale = scale(1);

    const double res = (L.matrix * vectorize(state.rho)).norm();
    if (!(res <= p.tol_steady * L.matrix.norm()))
        throw NoConvergence("solve_steady: stationarity residual not met");

    // uniqueness gate: null space must be one-dimensional
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(L.matrix);
    const auto& sv = svd.singularValues();
    if (sv(d2 - 2) <= 1e-8 * sv(0))
        throw DegenerateSteadyState("solve_steady: near-degenerate null space");

    check_density(state);
    return state;
}

double steady_residual(const LiouvillianMatrix& L, const DensityMatrix& state) {
    return (L.matrix * vectorize(state.rho)).norm() / L.matrix.norm();
}

DensityMatrix evolve(const LiouvillianMatrix& L, const DensityMatrix& rho0,
                     double t_final, double rtol, double atol) {
    if (rho0.rho.rows() != L.dim_rho)
        throw DimensionMismatch("evolve: state dimension mismatch");
    if (t_final < 0) throw Error("evolve: negative time");
    if (t_final == 0) return rho0;

    auto rhs = [&L](double, const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
        return L.matrix * v;
    };
    Eigen::VectorXcd v =
        integrate_adaptive(rhs, Eigen::VectorXcd(vectorize(rho0.rho)), 0.0,
                           t_final, rtol, atol);

    DensityMatrix out;
    out.rho = unvectorize(v, L.dim_rho);
    const double tr = out.rho.trace().real();
    if (std::abs(tr - 1.0) > 1e-10)
        throw NoConvergence("evolve: trace drifted beyond 1e-10");
    return out;
}

TruncationReport check_truncation(const ModelParams& p,
                                  const ObservableExtractor& extract) {
    auto value_at = [&](int n_max) {
        ModelParams q = p;
        q.n_max = n_max;
        const SystemOperators ops = build_system_operators(n_max);
        const LiouvillianMatrix L = build_liouvillian(q, ops);
        return extract(solve_steady(L, q), ops);
    };

    TruncationReport rep;
    rep.value_at_n_max = value_at(p.n_max);
    rep.value_at_double = value_at(2 * p.n_max);
    rep.abs_change = std::abs(rep.value_at_double - rep.value_at_n_max);
    const double ref = std::max(std::abs(rep.value_at_n_max),
                                std::abs(rep.value_at_double));
    rep.rel_change = ref > 0 ? rep.abs_change / ref : 0.0;
    return rep;
}

} // namespace qfilt
