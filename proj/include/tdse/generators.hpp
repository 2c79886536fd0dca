// generators.hpp — per-sample evaluation of the symmetry-generator
// coefficient functions for the three system classes: the Heisenberg-Weyl
// pair (G_P, G_X, G_I) with the derived purely imaginary F_P, F_X, and the
// seven-column su(1,1) rows.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tdse/aux_solver.hpp"
#include "tdse/system_model.hpp"

namespace tdse {

// phi_1 = xi^2, phi_2 = conj(xi)^2, phi_3 = 2 xi conj(xi) with first and
// second t'-derivatives (the second derivative substitutes
// xi'' = -2 g2 xi, so no numerical differentiation is involved).
struct PhiFunctions {
    std::vector<double> grid;  // t' samples
    std::array<std::vector<Complex>, 3> phi;
    std::array<std::vector<Complex>, 3> phi_dot;
    std::array<std::vector<Complex>, 3> phi_ddot;

    std::size_t size() const { return grid.size(); }
};

PhiFunctions phi_functions(const AuxSolution& sol, const CoeffExpr& g2);

// E_j, D_j and E_j' of the su(1,1) rows; requires the drift integral.
// E' uses C' = g1 xi.
struct EdFunctions {
    std::vector<double> grid;
    std::array<std::vector<Complex>, 3> e;
    std::array<std::vector<Complex>, 3> e_dot;
    std::array<std::vector<Complex>, 3> d;

    std::size_t size() const { return grid.size(); }
};

EdFunctions ed_functions(const AuxSolution& sol, const CoeffExpr& g1);

// One column of generator data per time sample.  The grid is t' for TO and
// t for TM/TQ.  F_P and F_X are computed from the G's as
// F_P = G_P conj(G_I) - conj(G_P) G_I (and the X analogue), which for the
// TQ column reproduces the -i mu e^nu term of the printed table entry.
struct WeylCoefficients {
    SystemClass cls;
    std::vector<double> grid;
    std::vector<Complex> g_p, g_x, g_i;
    std::vector<Complex> f_p, f_x;

    std::size_t size() const { return grid.size(); }

    // G_P conj(G_X) - conj(G_P) G_X; equals -i for every class and gauge.
    Complex pairing(std::size_t i) const;
};

// For TO the map may be the identity map; for TM/TQ it must be built from
// gauge.nu so that hatted quantities compose consistently.
WeylCoefficients weyl_coefficients(SystemClass cls, const AuxSolution& sol,
                                   const GaugeFunctions& gauge, const TimeMap& tmap);

// Seven coefficient columns of one su(1,1) generator row, following the
// sign convention in which the generator reads
//   -( -C_T T + C_P2 P^2 + C_D D + C_P P + C_X2 X^2 + C_X X + C_I I ).
struct Su11Row {
    std::vector<Complex> t, p2, d, p, x2, x, i;
};

struct Su11Coefficients {
    SystemClass cls;
    std::vector<double> grid;
    std::array<Su11Row, 3> rows;  // j = 1, 2, 3

    std::size_t size() const { return grid.size(); }
};

// TM rows use g0-hat = (g0 o t'); when tm_f0 samples are supplied the
// alternative e^{2 nu} f0 is used instead, and a disagreement beyond 1e-8
// with the composed form is reported through `warning` (when non-null).
Su11Coefficients su11_coefficients(SystemClass cls, const PhiFunctions& phis,
                                   const EdFunctions& eds, const CoeffExpr& g0,
                                   const GaugeFunctions& gauge, const TimeMap& tmap,
                                   const TqSystem* tq_inputs = nullptr,
                                   std::span<const double> tm_f0 = {},
                                   std::string* warning = nullptr);

}  // namespace tdse
