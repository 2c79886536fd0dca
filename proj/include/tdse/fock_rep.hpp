// fock_rep.hpp — dense realization of the abstract algebra
// {M, J+, J-, I, K+, K-, K3} on the first N number states, displacement and
// squeeze operators, and the machinery used to verify every commutation
// relation, the Casimir eigenvalue, and the BCH factorization.
//
// Truncation corrupts only the top rows/columns of ladder products, so each
// operator carries a `safe_band`: algebra assertions are restricted to the
// action on span{e_0 .. e_band}.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "tdse/aux_solver.hpp"  // Complex alias

namespace tdse {

struct TruncatedOperator {
    Eigen::MatrixXcd m;
    int safe_band;  // largest n with truncation-exact action on e_0..e_n

    int dim() const { return static_cast<int>(m.rows()); }
};

struct LadderOperators {
    TruncatedOperator j_minus, j_plus, number, identity;  // number = M
};

// J- e_n = sqrt(n) e_{n-1}, J+ = (J-)^dagger, M = diag(n + 1/2).
LadderOperators build_ladder(int n_dim);

struct Su11Operators {
    TruncatedOperator k_minus, k_plus, k3;  // K-+ = J-*J-/2 etc., K3 = J+J- + 1/2
};

Su11Operators build_su11(int n_dim);

// C = J+J- - M; equals -(1/2) I exactly entry-wise at every dimension.
TruncatedOperator casimir(int n_dim);

// (1/sqrt(n!)) (J+)^n e_0; equals the basis vector e_n.
Eigen::VectorXcd number_state(int n, int n_dim);

struct SqueezeParams {
    double r = 0.0;      // >= 0
    double theta = 0.0;  // radians
    Complex z() const { return Complex(r * std::cos(theta), r * std::sin(theta)); }
};

// exp(alpha J+ - conj(alpha) J-).  Truncation is benign while |alpha|^2 is
// well below the dimension; callers should treat |alpha|^2 > N/4 as suspect.
TruncatedOperator displacement(Complex alpha, int n_dim);
bool displacement_within_truncation(Complex alpha, int n_dim);

// exp(z K+ - conj(z) K-).
TruncatedOperator squeeze(SqueezeParams sq, int n_dim);

// The same operator in canonical coordinates of the second kind,
// exp(g+ K+) exp(g3 K3) exp(g- K-) with
//   g- = -(conj(z)/|z|) tanh|z|,  g+ = (z/|z|) tanh|z|,  g3 = -ln cosh|z|,
// all zero in the z -> 0 limit.
TruncatedOperator bch_squeeze(SqueezeParams sq, int n_dim);

// Matrix exponential by scaling-and-squaring with the diagonal (13,13) Pade
// approximant.
Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& a);

// ---- verification ----------------------------------------------------------

struct RelationResidual {
    std::string relation;
    int dim;
    int band;
    double residual;  // Frobenius norm over columns 0..band
};

// Residuals of every commutation relation of the oscillator and su(1,1)
// subalgebras plus their cross relations, the Casimir identity, and the
// K3 = M coincidence of this representation.
std::vector<RelationResidual> algebra_relation_residuals(int n_dim);

// Every commutator of basis elements decomposed in the span of
// {K+, K-, K3, J+, J-, I} by least squares on the safe band; returns the
// worst decomposition residual together with the worst deviation of the
// fitted coefficients from the structure constants.
struct ClosureReport {
    double max_decomposition_residual;
    double max_coefficient_error;
};
ClosureReport closure_report(int n_dim);

}  // namespace tdse
