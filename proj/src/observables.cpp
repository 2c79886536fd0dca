#include "tdse/observables.hpp"

#include <cmath>

#include "tdse/errors.hpp"

namespace tdse {

namespace {

constexpr double kImaginaryResidueLimit = 1e-8;

Eigen::VectorXcd displaced_squeezed_vacuum(Complex alpha, SqueezeParams sq, int n_dim) {
    Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(n_dim);
    e0(0) = 1.0;
    Eigen::VectorXcd psi = (sq.r != 0.0) ? Eigen::VectorXcd(squeeze(sq, n_dim).m * e0) : e0;
    if (alpha != Complex{}) psi = displacement(alpha, n_dim).m * psi;
    return psi;
}

}  // namespace

Complex alpha_from_phase_point(const WeylCoefficients& w, std::size_t idx0, double x_o,
                               double p_o) {
    const Complex gp = w.g_p[idx0], gx = w.g_x[idx0];
    const Complex fp = w.f_p[idx0], fx = w.f_x[idx0];
    const Complex ii(0.0, 1.0);
    return ii * (gp * p_o - gx * x_o) + gp * fx - gx * fp;
}

Complex resolve_alpha(const StateSpec& state, const WeylCoefficients& w) {
    if (state.alpha.has_value() == state.phase_point.has_value())
        throw ConfigError("state must supply exactly one of alpha / (x_o, p_o)");
    if (state.alpha) return *state.alpha;
    return alpha_from_phase_point(w, 0, state.phase_point->first, state.phase_point->second);
}

Trajectory evaluate_trajectory(const WeylCoefficients& w, Complex alpha, SqueezeParams sq,
                               int threads) {
    TrajectorySamples s = (threads == 1) ? trajectory_kernel_serial(w, alpha, sq)
                                         : trajectory_kernel_parallel(w, alpha, sq, threads);
    if (s.max_imag_residue > kImaginaryResidueLimit)
        throw ImaginaryResidueError("expectation values carry an imaginary residue of " +
                                        std::to_string(s.max_imag_residue),
                                    s.max_imag_residue);
    Trajectory out;
    out.cls = w.cls;
    out.grid = w.grid;
    out.x_mean = std::move(s.x_mean);
    out.p_mean = std::move(s.p_mean);
    out.var_x = std::move(s.var_x);
    out.var_p = std::move(s.var_p);
    out.product = std::move(s.product);
    return out;
}

FockSamples fock_cross_check(const WeylCoefficients& w, Complex alpha, SqueezeParams sq,
                             int n_dim, std::span<const std::size_t> sample_indices, int threads,
                             std::string* warning) {
    if (warning != nullptr) {
        if (!displacement_within_truncation(alpha, n_dim))
            *warning = "displacement |alpha|^2 exceeds N/4; truncation error may dominate";
        else if (sq.r > 2.0 * std::sqrt(static_cast<double>(n_dim) / 40.0))
            *warning = "squeeze amplitude outside truncation guidance for this dimension";
    }
    auto l = build_ladder(n_dim);
    const Eigen::VectorXcd psi = displaced_squeezed_vacuum(alpha, sq, n_dim);
    return (threads == 1)
               ? fock_kernel_serial(w, sample_indices, psi, l.j_minus.m, l.j_plus.m)
               : fock_kernel_parallel(w, sample_indices, psi, l.j_minus.m, l.j_plus.m, threads);
}

SrReport sr_bound_check(Complex alpha, SqueezeParams sq, int n_dim) {
    auto l = build_ladder(n_dim);
    const double rt2 = std::sqrt(2.0);
    const Complex ii(0.0, 1.0);
    const Eigen::MatrixXcd xc = (l.j_minus.m + l.j_plus.m) / rt2;
    const Eigen::MatrixXcd pc = (l.j_minus.m - l.j_plus.m) / (ii * rt2);

    const Eigen::VectorXcd psi = displaced_squeezed_vacuum(alpha, sq, n_dim);
    const Eigen::VectorXcd xpsi = xc * psi;
    const Eigen::VectorXcd ppsi = pc * psi;

    SrReport rep{};
    const double ex = psi.dot(xpsi).real();
    const double ep = psi.dot(ppsi).real();
    rep.var_x = xpsi.squaredNorm() - ex * ex;
    rep.var_p = ppsi.squaredNorm() - ep * ep;
    rep.covariance = xpsi.dot(ppsi).real() - ex * ep;  // Re<Xpsi|Ppsi> = <{X,P}>/2
    rep.product = rep.var_x * rep.var_p;
    rep.bound = 0.25 + rep.covariance * rep.covariance;
    rep.saturation_defect = std::abs(rep.product - rep.bound);
    return rep;
}

std::vector<double> class_product_path(SystemClass cls, const PhiFunctions& phis,
                                       const AuxSolution& sol, const GaugeFunctions& gauge,
                                       const TimeMap& tmap, SqueezeParams sq) {
    const std::size_t n = phis.size();
    std::vector<double> out(n);
    const double c2r = std::cosh(2.0 * sq.r);
    const double s2r = std::sinh(2.0 * sq.r);
    const Complex eith(std::cos(sq.theta), std::sin(sq.theta));

    auto ts = tmap.grid_t();
    auto xd = sol.xi_dot();
    for (std::size_t i = 0; i < n; ++i) {
        Complex b1 = phis.phi_dot[0][i];
        Complex b2 = phis.phi_dot[1][i];
        Complex b3 = phis.phi_dot[2][i];
        if (cls == SystemClass::TQ) {
            const double t = ts[i];
            const double kap = gauge.kappa.eval(t);
            const double em2n = std::exp(-2.0 * gauge.nu.eval(t));
            const Complex v = xd[i], vb = std::conj(v);
            b1 += 4.0 * v * v * kap * em2n;
            b2 += 4.0 * vb * vb * kap * em2n;
            b3 += 8.0 * v * vb * kap * em2n;
        }
        const Complex bracket = b3 * c2r + (b1 * std::conj(eith) + b2 * eith) * s2r;
        out[i] = 0.25 * (1.0 + 0.25 * bracket.real() * bracket.real());
    }
    return out;
}

double sho_squeezed_product(double omega, double r, double theta, double t_minus_to) {
    const double s2 = std::exp(2.0 * r);
    const double amp = s2 - 1.0 / s2;
    const double sn = std::sin(2.0 * omega * t_minus_to - theta);
    return 0.25 * (1.0 + 0.25 * amp * amp * sn * sn);
}

}  // namespace tdse
