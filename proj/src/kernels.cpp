#include "tdse/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace tdse {

namespace {

struct SampleResult {
    double x_mean, p_mean, var_x, var_p, product, imag_residue;
};

// One closed-form trajectory sample.  <x> = alpha conj(G_P) + conj(alpha) G_P
// + i F_P and the P analogue; variances carry the cosh/sinh squeeze dressing,
// whose r = 0 limit is |G_P|^2, |G_X|^2; the product uses the squared-bracket
// form, whose bracket is real up to rounding.
SampleResult trajectory_sample(const WeylCoefficients& w, std::size_t i, Complex alpha,
                               double cosh2r, double sinh2r, Complex eith) {
    const Complex gp = w.g_p[i], gx = w.g_x[i];
    const Complex fp = w.f_p[i], fx = w.f_x[i];
    const Complex ii(0.0, 1.0);

    const Complex xm = alpha * std::conj(gp) + std::conj(alpha) * gp + ii * fp;
    const Complex pm = alpha * std::conj(gx) + std::conj(alpha) * gx + ii * fx;

    const Complex vx = 0.5 * (std::conj(gp) * std::conj(gp) * eith +
                              gp * gp * std::conj(eith)) * sinh2r +
                       gp * std::conj(gp) * cosh2r;
    const Complex vp = 0.5 * (std::conj(gx) * std::conj(gx) * eith +
                              gx * gx * std::conj(eith)) * sinh2r +
                       gx * std::conj(gx) * cosh2r;

    const Complex bracket = (gp * std::conj(gx) + std::conj(gp) * gx) * cosh2r +
                            (gp * gx * std::conj(eith) + std::conj(gp) * std::conj(gx) * eith) *
                                sinh2r;

    double residue = std::abs(xm.imag());
    residue = std::max(residue, std::abs(pm.imag()));
    residue = std::max(residue, std::abs(vx.imag()));
    residue = std::max(residue, std::abs(vp.imag()));
    residue = std::max(residue, std::abs(bracket.imag()));

    const double br = bracket.real();
    return {xm.real(), pm.real(), vx.real(), vp.real(), 0.25 * (1.0 + br * br), residue};
}

void store(TrajectorySamples& out, std::size_t i, const SampleResult& r) {
    out.x_mean[i] = r.x_mean;
    out.p_mean[i] = r.p_mean;
    out.var_x[i] = r.var_x;
    out.var_p[i] = r.var_p;
    out.product[i] = r.product;
}

// One operator-path sample: X = conj(G_P) J- + G_P J+ + i F_P I (Hermitian
// because F_P is purely imaginary), moments by two mat-vec products.
void fock_sample(const WeylCoefficients& w, std::size_t i, const Eigen::VectorXcd& psi,
                 const Eigen::MatrixXcd& jm, const Eigen::MatrixXcd& jp, double& x_mean,
                 double& p_mean, double& var_x, double& var_p) {
    const Complex ii(0.0, 1.0);
    const Eigen::MatrixXcd x_op =
        std::conj(w.g_p[i]) * jm + w.g_p[i] * jp +
        (ii * w.f_p[i]) * Eigen::MatrixXcd::Identity(jm.rows(), jm.cols());
    const Eigen::MatrixXcd p_op =
        std::conj(w.g_x[i]) * jm + w.g_x[i] * jp +
        (ii * w.f_x[i]) * Eigen::MatrixXcd::Identity(jm.rows(), jm.cols());

    const Eigen::VectorXcd xpsi = x_op * psi;
    const Eigen::VectorXcd ppsi = p_op * psi;
    x_mean = psi.dot(xpsi).real();
    p_mean = psi.dot(ppsi).real();
    var_x = xpsi.squaredNorm() - x_mean * x_mean;  // X Hermitian: <X^2> = |X psi|^2
    var_p = ppsi.squaredNorm() - p_mean * p_mean;
}

}  // namespace

int effective_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("TDSE_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

TrajectorySamples trajectory_kernel_serial(const WeylCoefficients& w, Complex alpha,
                                           SqueezeParams sq) {
    const std::size_t n = w.size();
    TrajectorySamples out;
    out.resize(n);
    const double cosh2r = std::cosh(2.0 * sq.r);
    const double sinh2r = std::sinh(2.0 * sq.r);
    const Complex eith(std::cos(sq.theta), std::sin(sq.theta));

    for (std::size_t i = 0; i < n; ++i) {
        const SampleResult r = trajectory_sample(w, i, alpha, cosh2r, sinh2r, eith);
        store(out, i, r);
        out.max_imag_residue = std::max(out.max_imag_residue, r.imag_residue);
    }
    return out;
}

TrajectorySamples trajectory_kernel_parallel(const WeylCoefficients& w, Complex alpha,
                                             SqueezeParams sq, int threads) {
    const std::size_t n = w.size();
    TrajectorySamples out;
    out.resize(n);
    const double cosh2r = std::cosh(2.0 * sq.r);
    const double sinh2r = std::sinh(2.0 * sq.r);
    const Complex eith(std::cos(sq.theta), std::sin(sq.theta));
    const int nt = effective_threads(threads);

    double residue = 0.0;
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) num_threads(nt) reduction(max : residue)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        const SampleResult r =
            trajectory_sample(w, static_cast<std::size_t>(i), alpha, cosh2r, sinh2r, eith);
        store(out, static_cast<std::size_t>(i), r);
        residue = std::max(residue, r.imag_residue);
    }
    (void)nt;
    out.max_imag_residue = residue;
    return out;
}

FockSamples fock_kernel_serial(const WeylCoefficients& w, std::span<const std::size_t> samples,
                               const Eigen::VectorXcd& state, const Eigen::MatrixXcd& j_minus,
                               const Eigen::MatrixXcd& j_plus) {
    FockSamples out;
    out.resize(samples.size());
    for (std::size_t k = 0; k < samples.size(); ++k)
        fock_sample(w, samples[k], state, j_minus, j_plus, out.x_mean[k], out.p_mean[k],
                    out.var_x[k], out.var_p[k]);
    return out;
}

FockSamples fock_kernel_parallel(const WeylCoefficients& w, std::span<const std::size_t> samples,
                                 const Eigen::VectorXcd& state, const Eigen::MatrixXcd& j_minus,
                                 const Eigen::MatrixXcd& j_plus, int threads) {
    FockSamples out;
    out.resize(samples.size());
    const int nt = effective_threads(threads);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) num_threads(nt)
#endif
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(samples.size()); ++k)
        fock_sample(w, samples[k], state, j_minus, j_plus, out.x_mean[k], out.p_mean[k],
                    out.var_x[k], out.var_p[k]);
    (void)nt;
    return out;
}

}  // namespace tdse
