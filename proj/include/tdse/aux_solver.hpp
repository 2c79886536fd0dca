// aux_solver.hpp — integration of the complex auxiliary oscillator equation
//
//     xi'' + 2 g2(t') xi = 0,
//
// whose solution pair {xi, conj(xi)} with Wronskian normalization
//
//     xi conj(xi)' - xi' conj(xi) = -i
//
// generates every symmetry coefficient downstream.  Also accumulates the
// drift integral c(t') = \int g1(s) xi(s) ds.

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "tdse/coeff_expr.hpp"

namespace tdse {

using Complex = std::complex<double>;

struct AuxInitialData {
    Complex xi;
    Complex xi_dot;
};

// Harmonic-oscillator-style initial data: xi = (2 w0)^{-1/2},
// xi' = i w0 (2 w0)^{-1/2} with w0 = sqrt(max(2 g2(t0), eps)), eps = 1e-6.
// Satisfies the Wronskian normalization exactly and reproduces the SHO
// reference when g2 is the constant w^2/2.
AuxInitialData default_initial_data(const CoeffExpr& g2, double tprime0);

struct AuxTolerances {
    // One order tighter than the nominal 1e-10/1e-12: at 1e-10 relative the
    // accumulated Wronskian drift over a 50-unit window measures ~1.2e-9,
    // which would breach the 1e-9 conservation budget.
    double rel = 1e-11;
    double abs = 1e-13;
    double wronskian_failure = 1e-8;
};

class AuxSolution {
public:
    std::size_t size() const { return grid_.size(); }
    std::span<const double> grid_tprime() const { return grid_; }
    std::span<const Complex> xi() const { return xi_; }
    std::span<const Complex> xi_dot() const { return xi_dot_; }
    std::span<const Complex> xi_ddot() const { return xi_ddot_; }
    std::span<const Complex> c_integral() const { return c_; }
    Complex c_naught() const { return c_naught_; }
    bool has_c() const { return !c_.empty(); }

    // Accumulated drift including the integration constant: C = c + C^0.
    Complex big_c(std::size_t i) const { return c_[i] + c_naught_; }

    // W = xi conj(xi)' - xi' conj(xi) at sample i (always purely imaginary).
    Complex wronskian(std::size_t i) const;

    // Dense output between samples.  xi uses two-point quintic Hermite
    // (values, first and second derivatives at both ends; the second
    // derivative is free via the ODE), xi' its derivative, c cubic Hermite
    // with c' = g1 xi.
    Complex xi_at(double tprime) const;
    Complex xi_dot_at(double tprime) const;
    Complex c_at(double tprime) const;
    Complex big_c_at(double tprime) const { return c_at(tprime) + c_naught_; }

private:
    std::size_t interval_of(double tprime) const;

    std::vector<double> grid_;
    std::vector<Complex> xi_, xi_dot_, xi_ddot_;
    std::vector<Complex> c_, c_dot_;
    Complex c_naught_{0.0, 0.0};

    friend AuxSolution solve_auxiliary(const CoeffExpr&, std::span<const double>,
                                       AuxInitialData, AuxTolerances);
    friend AuxSolution integrate_c(const CoeffExpr&, AuxSolution, Complex);
};

// Integrates the auxiliary equation over the given strictly increasing grid
// of t' points (the solver lands on each point exactly; no interpolation).
// Throws InvalidInitialData when |W + i| > 1e-12 at the start, and
// WronskianDriftError when the invariant drifts past the failure threshold
// at any accepted step.
AuxSolution solve_auxiliary(const CoeffExpr& g2, std::span<const double> grid_tprime,
                            AuxInitialData init, AuxTolerances tol = {});

// Convenience overload: uniform grid of n_samples points on [tp0, tp1].
AuxSolution solve_auxiliary(const CoeffExpr& g2, double tp0, double tp1,
                            std::size_t n_samples, AuxInitialData init,
                            AuxTolerances tol = {});

// Same, with default initial data.
AuxSolution solve_auxiliary(const CoeffExpr& g2, double tp0, double tp1,
                            std::size_t n_samples, AuxTolerances tol = {});

// Fills the drift integral c(t') = \int_{grid[0]}^{t'} g1(s) xi(s) ds by
// adaptive Simpson over the dense solution, plus the integration constant.
AuxSolution integrate_c(const CoeffExpr& g1, AuxSolution sol, Complex c_naught = {});

// Raw embedded-RK integration of gamma'' + 2 g2 gamma = 0 without Wronskian
// validation or monitoring; exposed for linearity checks on arbitrary
// (non-normalized) initial data.
struct RawAuxResult {
    std::vector<Complex> gamma;
    std::vector<Complex> gamma_dot;
};
RawAuxResult integrate_auxiliary_raw(const CoeffExpr& g2, std::span<const double> grid_tprime,
                                     Complex gamma0, Complex gamma_dot0, AuxTolerances tol = {});

}  // namespace tdse
