// kernels.hpp — data-parallel per-sample evaluation kernels.  Every kernel
// ships in two variants: a serial reference and an OpenMP version.  The two
// must produce bit-identical output (each sample is computed independently
// with identical instructions), which the test suite asserts and the bench
// target times.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tdse/fock_rep.hpp"
#include "tdse/generators.hpp"

namespace tdse {

// Raw per-sample trajectory data; realification and error policy live in
// observables.
struct TrajectorySamples {
    std::vector<double> x_mean, p_mean, var_x, var_p, product;
    double max_imag_residue = 0.0;  // worst |Im| seen before realification

    void resize(std::size_t n) {
        x_mean.resize(n); p_mean.resize(n);
        var_x.resize(n);  var_p.resize(n);
        product.resize(n);
    }
};

// Closed-form path: means from the displacement parameter and the F terms,
// variances and uncertainty product from the squeeze-dressed bilinears.
TrajectorySamples trajectory_kernel_serial(const WeylCoefficients& w, Complex alpha,
                                           SqueezeParams sq);
TrajectorySamples trajectory_kernel_parallel(const WeylCoefficients& w, Complex alpha,
                                             SqueezeParams sq, int threads);

// Truncated-operator path: per sample, assemble X(t), P(t) from the Weyl
// coefficients and take moments in the state D(alpha) S(z) e0.
struct FockSamples {
    std::vector<double> x_mean, p_mean, var_x, var_p;

    void resize(std::size_t n) {
        x_mean.resize(n); p_mean.resize(n);
        var_x.resize(n);  var_p.resize(n);
    }
};

FockSamples fock_kernel_serial(const WeylCoefficients& w, std::span<const std::size_t> samples,
                               const Eigen::VectorXcd& state, const Eigen::MatrixXcd& j_minus,
                               const Eigen::MatrixXcd& j_plus);
FockSamples fock_kernel_parallel(const WeylCoefficients& w, std::span<const std::size_t> samples,
                                 const Eigen::VectorXcd& state, const Eigen::MatrixXcd& j_minus,
                                 const Eigen::MatrixXcd& j_plus, int threads);

// Effective thread count: explicit argument if > 0, else the TDSE_THREADS
// environment cap, else the OpenMP default.
int effective_threads(int requested);

}  // namespace tdse
