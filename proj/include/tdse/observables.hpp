// observables.hpp — coherent- and squeezed-state expectation values,
// uncertainties, and uncertainty products.  Two independent computation
// paths are kept deliberately separate: the closed-form path works directly
// on the Weyl coefficient table, the truncated-operator path assembles
// X(t), P(t) matrices and takes moments in D(alpha) S(z) e0.  Each serves
// as the oracle for the other.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tdse/fock_rep.hpp"
#include "tdse/generators.hpp"
#include "tdse/kernels.hpp"

namespace tdse {

// Either a displacement parameter or an initial phase-space point; exactly
// one must be set.  r = 0 means coherent.
struct StateSpec {
    std::optional<Complex> alpha;
    std::optional<std::pair<double, double>> phase_point;  // (x_o, p_o)
    SqueezeParams squeeze;
};

// alpha = i (G_P^o p_o - G_X^o x_o) + G_P^o F_X^o - G_X^o F_P^o with the
// superscript o taken at sample `idx0`.
Complex alpha_from_phase_point(const WeylCoefficients& w, std::size_t idx0, double x_o,
                               double p_o);

// Resolves a StateSpec to its displacement parameter (anchored at sample 0).
Complex resolve_alpha(const StateSpec& state, const WeylCoefficients& w);

struct Trajectory {
    SystemClass cls;
    std::vector<double> grid;  // t' for TO, t for TM/TQ
    std::vector<double> x_mean, p_mean, var_x, var_p, product;

    std::size_t size() const { return grid.size(); }
};

// Closed-form trajectory over the full coefficient grid.  Realification is
// checked: an imaginary residue above 1e-8 on any sample throws
// ImaginaryResidueError (corrupted coefficients upstream).  threads <= 0
// selects the TDSE_THREADS / OpenMP default; 1 runs the serial reference.
Trajectory evaluate_trajectory(const WeylCoefficients& w, Complex alpha, SqueezeParams sq,
                               int threads = 1);

// Truncated-operator cross-check at the given sample indices.  When the
// displacement or squeeze parameters sit outside the truncation guidance
// (|alpha|^2 > N/4 or r > 2 at N = 40 scale), a note is written to
// *warning.
FockSamples fock_cross_check(const WeylCoefficients& w, Complex alpha, SqueezeParams sq,
                             int n_dim, std::span<const std::size_t> sample_indices,
                             int threads = 1, std::string* warning = nullptr);

// Schrodinger-Robertson check for the dimensionless pair
// Xc = (J- + J+)/sqrt(2), Pc = (J- - J+)/(i sqrt(2)) in the state
// D(alpha) S(z) e0.  The coefficients play no role here, so the report is
// per state, not per sample.
struct SrReport {
    double var_x, var_p;
    double covariance;        // (1/2) <{Xc - <Xc>, Pc - <Pc>}>
    double product;           // var_x * var_p
    double bound;             // 1/4 + covariance^2
    double saturation_defect; // |product - bound|
};
SrReport sr_bound_check(Complex alpha, SqueezeParams sq, int n_dim);

// Class-specific uncertainty-product path built from the phi derivatives
// (TO), their hatted compositions (TM), or the kappa/nu-dressed combination
// (TQ); agrees with the generic path to rounding.
std::vector<double> class_product_path(SystemClass cls, const PhiFunctions& phis,
                                       const AuxSolution& sol, const GaugeFunctions& gauge,
                                       const TimeMap& tmap, SqueezeParams sq);

// Squeezed harmonic-oscillator uncertainty product in closed form,
// (1/4)[1 + (1/4)(s^2 - s^{-2})^2 sin^2(2 w dt - theta)], s = e^r.
double sho_squeezed_product(double omega, double r, double theta, double t_minus_to);

}  // namespace tdse
