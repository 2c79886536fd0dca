#include "tdse/classical_check.hpp"

#include <cmath>

#include "tdse/errors.hpp"

namespace tdse {

TimeFn as_time_fn(const CoeffExpr& expr) {
    return [expr](double t) { return expr.eval(t); };
}

ClassicalSystem ClassicalSystem::to_class(TimeFn g2, TimeFn g1) {
    return {SystemClass::TO, std::move(g2), std::move(g1), {}, {}, {}};
}

ClassicalSystem ClassicalSystem::tm_class(TimeFn nu, TimeFn f2, TimeFn f1) {
    return {SystemClass::TM, std::move(nu), std::move(f2), std::move(f1), {}, {}};
}

ClassicalSystem ClassicalSystem::tq_class(TimeFn k, TimeFn h, TimeFn g, TimeFn h2, TimeFn h1) {
    return {SystemClass::TQ, std::move(k), std::move(h), std::move(g), std::move(h2),
            std::move(h1)};
}

std::pair<double, double> hamilton_rhs(const ClassicalSystem& sys, double x, double p, double t) {
    switch (sys.cls) {
        case SystemClass::TO: {
            const double g2 = sys.c0(t), g1 = sys.c1(t);
            return {p, -2.0 * g2 * x - g1};
        }
        case SystemClass::TM: {
            const double nu = sys.c0(t), f2 = sys.c1(t), f1 = sys.c2(t);
            return {std::exp(-2.0 * nu) * p, -2.0 * f2 * x - f1};
        }
        case SystemClass::TQ: {
            const double k = sys.c0(t), h = sys.c1(t), g = sys.c2(t);
            const double h2 = sys.c3(t), h1 = sys.c4(t);
            return {(1.0 + k) * p - 0.5 * h * x - 0.5 * g,
                    0.5 * h * p - 2.0 * h2 * x - h1};
        }
    }
    throw ConfigError("unreachable system class");
}

ClassicalResidualReport verify_classical_motion(const Trajectory& traj,
                                                const ClassicalSystem& sys) {
    const std::size_t n = traj.size();
    if (n < 3) throw ConfigError("classical check needs at least 3 samples");

    const double delta = traj.grid[1] - traj.grid[0];
    for (std::size_t i = 1; i + 1 < n; ++i)
        if (std::abs((traj.grid[i + 1] - traj.grid[i]) - delta) > 1e-9 * std::max(1.0, delta))
            throw ConfigError("classical check requires a uniform grid");

    ClassicalResidualReport rep{delta, 0.0, 0.0};
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double dx = (traj.x_mean[i + 1] - traj.x_mean[i - 1]) / (2.0 * delta);
        const double dp = (traj.p_mean[i + 1] - traj.p_mean[i - 1]) / (2.0 * delta);
        const auto [fx, fp] = hamilton_rhs(sys, traj.x_mean[i], traj.p_mean[i], traj.grid[i]);
        rep.max_residual_x = std::max(rep.max_residual_x, std::abs(dx - fx));
        rep.max_residual_p = std::max(rep.max_residual_p, std::abs(dp - fp));
    }
    return rep;
}

}  // namespace tdse
