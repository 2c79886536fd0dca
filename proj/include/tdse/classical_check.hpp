// classical_check.hpp — verifies that coherent/squeezed expectation
// trajectories obey the classical Hamilton equations of the matching class.
// The check is purely finite-difference: no classical integration happens
// here, only residuals of the quantum trajectory against the classical
// right-hand side.

#pragma once

#include <functional>

#include "tdse/observables.hpp"
#include "tdse/system_model.hpp"

namespace tdse {

using TimeFn = std::function<double(double)>;

TimeFn as_time_fn(const CoeffExpr& expr);

// Coefficient functions of the class Hamiltonian, in the class's own time
// variable (t' for TO, t for TM/TQ).  They may be closed forms or composed
// samples (the TM f-coefficients are e^{-2 nu} times a hatted TO function).
struct ClassicalSystem {
    SystemClass cls;
    // TO: g2, g1.  TM: nu, f2, f1.  TQ: k, h, g, h2, h1.
    TimeFn c0, c1, c2, c3, c4;

    static ClassicalSystem to_class(TimeFn g2, TimeFn g1);
    static ClassicalSystem tm_class(TimeFn nu, TimeFn f2, TimeFn f1);
    static ClassicalSystem tq_class(TimeFn k, TimeFn h, TimeFn g, TimeFn h2, TimeFn h1);
};

// Hamilton right-hand side (dx/dt, dp/dt):
// TO:  ( p, -2 g2 x - g1 )
// TM:  ( e^{-2 nu} p, -2 f2 x - f1 )
// TQ:  ( (1+k) p - (h/2) x - g/2,  (h/2) p - 2 h2 x - h1 )
// The TM dx/dt and the sign of the TQ (h/2) p term follow mechanically from
// dx/dt = dH/dp, dp/dt = -dH/dx applied to the class Hamiltonians.
std::pair<double, double> hamilton_rhs(const ClassicalSystem& sys, double x, double p, double t);

struct ClassicalResidualReport {
    double delta;           // grid spacing
    double max_residual_x;  // max |d<x>/dt - rhs_x| over interior samples
    double max_residual_p;
    double max_residual() const { return std::max(max_residual_x, max_residual_p); }
};

// Central differences of the trajectory against hamilton_rhs at every
// interior sample.  Requires a uniform grid.
ClassicalResidualReport verify_classical_motion(const Trajectory& traj,
                                                const ClassicalSystem& sys);

}  // namespace tdse
