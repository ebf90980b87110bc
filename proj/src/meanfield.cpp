#include "qfilt/meanfield.hpp"

#include <cmath>
#include <complex>
#include <ostream>

#include <Eigen/Dense>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "qfilt/effective_model.hpp"
#include "qfilt/errors.hpp"
#include "qfilt/ode.hpp"

namespace qfilt {

AmplitudeState evolve_amplitudes(const ModelParams& p, const AmplitudeState& s0,
                                 double t) {
    if (t < 0) throw NegativeTime("evolve_amplitudes: t must be nonnegative");
    using C = std::complex<double>;
    const double Gamma = p.dipole_relaxation();
    const C alpha(-0.5 * p.gamma_a, 0.0);
    const C delta(-Gamma, 0.0);
    const C beta(0.0, -p.omega_rabi);

    // exp(At) = e^{mu t} (cosh(nu t) I + sinh(nu t)/nu (A - mu I))
    const C mu = 0.5 * (alpha + delta);
    const C nu = std::sqrt(0.25 * (alpha - delta) * (alpha - delta) + beta * beta);
    const C x = nu * t;
    C ch, sh_over_nu;
    if (std::abs(x) < 1e-6) {
        ch = 1.0 + 0.5 * x * x;
        sh_over_nu = t * (1.0 + x * x / 6.0);
    } else {
        ch = std::cosh(x);
        sh_over_nu = std::sinh(x) / nu;
    }
    const C scale = std::exp(mu * t);

    AmplitudeState out;
    out.a = scale * ((ch + sh_over_nu * (alpha - mu)) * s0.a + sh_over_nu * beta * s0.sigma);
    out.sigma = scale * (sh_over_nu * beta * s0.a + (ch + sh_over_nu * (delta - mu)) * s0.sigma);
    return out;
}

namespace {

// d/dt (n_a, n_sigma, J) and the constant source term
Eigen::Matrix3d energy_matrix(const ModelParams& p) {
    const double Gamma = p.dipole_relaxation();
    Eigen::Matrix3d A;
    A << -p.gamma_a, 0.0, p.omega_rabi,
         0.0, -p.energy_relaxation(), -p.omega_rabi,
         -2.0 * p.omega_rabi, 2.0 * p.omega_rabi, -(0.5 * p.gamma_a + Gamma);
    return A;
}

Eigen::Vector3d energy_source(const ModelParams& p) {
    return {0.0, p.gamma_pump, 0.0};
}

} // namespace

EnergyState stationary_energy(const ModelParams& p) {
    if (p.gamma_a <= 0)
        throw SingularSystem("stationary_energy: gamma_a must be positive");
    const Eigen::Matrix3d A = energy_matrix(p);
    Eigen::FullPivLU<Eigen::Matrix3d> lu(A);
    const double det_scale = A.cwiseAbs().rowwise().sum().prod();
    if (std::abs(lu.determinant()) < 1e-14 * std::max(det_scale, 1e-300))
        throw SingularSystem("stationary_energy: singular balance system");
    const Eigen::Vector3d x = lu.solve(-energy_source(p));
    return {x(0), x(1), x(2)};
}

EnergyState evolve_energy(const ModelParams& p, const EnergyState& e0, double t) {
    if (t < 0) throw NegativeTime("evolve_energy: t must be nonnegative");
    const Eigen::Matrix3d A = energy_matrix(p);
    const Eigen::Vector3d b = energy_source(p);
    auto rhs = [&](double, const Eigen::Vector3d& y) -> Eigen::Vector3d {
        return A * y + b;
    };
    const Eigen::Vector3d y =
        integrate_adaptive(rhs, Eigen::Vector3d(e0.n_a, e0.n_sigma, e0.J), 0.0, t,
                           1e-10, 1e-13);
    EnergyState out{y(0), y(1), y(2)};
    if (out.n_a < -1e-9 || out.n_sigma < -1e-9 || out.n_sigma > 1.0 + 1e-9)
        throw Error("evolve_energy: state left the physical region");
    return out;
}

std::vector<double> evolve_nsigma_volterra(const ModelParams& p, double n0,
                                           double h, int n_steps) {
    if (h <= 0 || n_steps < 1)
        throw Error("evolve_nsigma_volterra: need h > 0 and n_steps >= 1");
    if (n0 < 0 || n0 > 1)
        throw Error("evolve_nsigma_volterra: n0 must lie in [0, 1]");
    const double Gamma = p.dipole_relaxation();
    const double gamma = p.energy_relaxation();
    const double dominant = std::max({gamma, 0.25 * (3.0 * p.gamma_a + 2.0 * Gamma),
                                      2.0 * p.omega_rabi});
    if (h * dominant > 0.1)
        throw StepTooLarge("evolve_nsigma_volterra: h too large for the rates");

    const double om2 = p.omega_rabi * p.omega_rabi;
    const int n_pts = n_steps + 1;

    // kernel and its running trapezoid integral on the grid
    std::vector<double> K(n_pts), IK(n_pts);
    for (int k = 0; k < n_pts; ++k) K[k] = kernel_K(p, k * h).value;
    IK[0] = 0.0;
    for (int k = 1; k < n_pts; ++k)
        IK[k] = IK[k - 1] + 0.5 * h * (K[k] + K[k - 1]);

    // window where the kernel still matters
    int window = n_steps;
    if (p.gamma_a > 0) {
        const double support = kernel_support_time(p);
        window = std::min<int>(n_steps, static_cast<int>(support / h) + 2);
    }

    std::vector<double> n(n_pts);
    n[0] = n0;

    auto derivative = [&](int k, double nk) {
        // trapezoid convolution int_0^{t_k} K(t_k - t') n(t') dt'
        double conv = 0.0;
        if (k > 0) {
            const int j0 = std::max(0, k - window);
            double acc = 0.0;
            for (int j = j0; j <= k; ++j) {
                const double v = K[k - j] * (j == k ? nk : n[j]);
                acc += (j == j0 || j == k) ? 0.5 * v : v;
            }
            conv = h * acc;
        }
        return -2.0 * om2 * K[k] * n[0] - gamma * nk + p.gamma_pump -
               2.0 * om2 * (p.gamma_a - gamma) * conv -
               2.0 * om2 * p.gamma_pump * IK[k];
    };

    for (int k = 0; k < n_steps; ++k) {
        const double f0 = derivative(k, n[k]);
        const double pred = n[k] + h * f0;
        n[k + 1] = pred;
        const double f1 = derivative(k + 1, pred);
        n[k + 1] = n[k] + 0.5 * h * (f0 + f1);
    }
    return n;
}

void write_time_series_csv(std::ostream& out, const char* value_name, double h,
                           const std::vector<double>& values) {
    fmt::print(out, "t,{}\n", value_name);
    for (std::size_t k = 0; k < values.size(); ++k)
        fmt::print(out, "{:.17g},{:.17g}\n", k * h, values[k]);
}

} // namespace qfilt
