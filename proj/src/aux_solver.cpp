#include "tdse/aux_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "tdse/errors.hpp"
#include "tdse/quadrature.hpp"

namespace tdse {

namespace {

constexpr double kWronskianInitTol = 1e-12;

struct State {
    Complex xi;
    Complex xi_dot;
};

// Dormand-Prince 5(4) tableau.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
                 B5 = -2187.0 / 6784, B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920,
                 E5 = -17253.0 / 339200, E6 = 22.0 / 525, E7 = -1.0 / 40;
constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;

class Dopri5 {
public:
    Dopri5(const CoeffExpr& g2, AuxTolerances tol) : g2_(g2), tol_(tol) {}

    State rhs(double t, const State& y) const {
        return {y.xi_dot, -2.0 * g2_.eval(t) * y.xi};
    }

    // Advances from t to t_target exactly; calls observer(t, state) after
    // every accepted step (including the landing step).
    template <class Observer>
    State advance(double t, double t_target, State y, Observer&& observer) {
        const double span = t_target - t;
        if (span <= 0.0) return y;
        if (h_ <= 0.0) h_ = initial_step(t, y, span);

        State k1 = rhs(t, y);
        while (t < t_target) {
            bool clipped = false;
            double h = h_;
            if (t + h >= t_target) {
                h = t_target - t;
                clipped = true;
            }

            State y2{y.xi + h * A21 * k1.xi, y.xi_dot + h * A21 * k1.xi_dot};
            State k2 = rhs(t + C2 * h, y2);
            State y3{y.xi + h * (A31 * k1.xi + A32 * k2.xi),
                     y.xi_dot + h * (A31 * k1.xi_dot + A32 * k2.xi_dot)};
            State k3 = rhs(t + C3 * h, y3);
            State y4{y.xi + h * (A41 * k1.xi + A42 * k2.xi + A43 * k3.xi),
                     y.xi_dot + h * (A41 * k1.xi_dot + A42 * k2.xi_dot + A43 * k3.xi_dot)};
            State k4 = rhs(t + C4 * h, y4);
            State y5{y.xi + h * (A51 * k1.xi + A52 * k2.xi + A53 * k3.xi + A54 * k4.xi),
                     y.xi_dot + h * (A51 * k1.xi_dot + A52 * k2.xi_dot + A53 * k3.xi_dot +
                                     A54 * k4.xi_dot)};
            State k5 = rhs(t + C5 * h, y5);
            State y6{y.xi + h * (A61 * k1.xi + A62 * k2.xi + A63 * k3.xi + A64 * k4.xi +
                                 A65 * k5.xi),
                     y.xi_dot + h * (A61 * k1.xi_dot + A62 * k2.xi_dot + A63 * k3.xi_dot +
                                     A64 * k4.xi_dot + A65 * k5.xi_dot)};
            State k6 = rhs(t + h, y6);

            State ynew{y.xi + h * (B1 * k1.xi + B3 * k3.xi + B4 * k4.xi + B5 * k5.xi +
                                   B6 * k6.xi),
                       y.xi_dot + h * (B1 * k1.xi_dot + B3 * k3.xi_dot + B4 * k4.xi_dot +
                                       B5 * k5.xi_dot + B6 * k6.xi_dot)};
            State k7 = rhs(t + h, ynew);  // FSAL

            const Complex err_xi = h * (E1 * k1.xi + E3 * k3.xi + E4 * k4.xi + E5 * k5.xi +
                                        E6 * k6.xi + E7 * k7.xi);
            const Complex err_xd = h * (E1 * k1.xi_dot + E3 * k3.xi_dot + E4 * k4.xi_dot +
                                        E5 * k5.xi_dot + E6 * k6.xi_dot + E7 * k7.xi_dot);

            const double sc1 = tol_.abs + tol_.rel * std::max(std::abs(y.xi), std::abs(ynew.xi));
            const double sc2 =
                tol_.abs + tol_.rel * std::max(std::abs(y.xi_dot), std::abs(ynew.xi_dot));
            const double err = std::sqrt(0.5 * (std::norm(err_xi / sc1) + std::norm(err_xd / sc2)));

            if (err <= 1.0) {
                t = clipped ? t_target : t + h;
                y = ynew;
                k1 = k7;
                observer(t, y);
                double factor = (err == 0.0) ? 5.0 : 0.9 * std::pow(err, -0.2);
                factor = std::clamp(factor, 0.2, rejected_ ? 1.0 : 5.0);
                rejected_ = false;
                if (!clipped) h_ = h * factor;
                else h_ = std::max(h_, h * factor);
            } else {
                rejected_ = true;
                h_ = h * std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
                if (!(t + h_ > t))
                    throw EvalError("auxiliary integrator step size underflow");
            }
        }
        return y;
    }

private:
    double initial_step(double t, const State& y, double span) const {
        const State f = rhs(t, y);
        const double dy = std::max({std::abs(y.xi), std::abs(y.xi_dot), 1e-6});
        const double df = std::max({std::abs(f.xi), std::abs(f.xi_dot), 1e-6});
        double h = 0.01 * dy / df;
        return std::clamp(h, 1e-8, span);
    }

    const CoeffExpr& g2_;
    AuxTolerances tol_;
    double h_ = -1.0;
    bool rejected_ = false;
};

Complex wronskian_of(Complex xi, Complex xi_dot) {
    return xi * std::conj(xi_dot) - xi_dot * std::conj(xi);
}

// Two-point quintic Hermite in normalized s in [0,1]: matches value, first
// and second derivative at both ends.
Complex quintic(double s, double h, Complex y0, Complex d0, Complex a0, Complex y1, Complex d1,
                Complex a1) {
    const Complex D0 = d0 * h, D1 = d1 * h;
    const Complex A0 = a0 * h * h, A1 = a1 * h * h;
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
    return y0 * (1 - 10 * s3 + 15 * s4 - 6 * s5) + D0 * (s - 6 * s3 + 8 * s4 - 3 * s5) +
           A0 * (0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5) +
           y1 * (10 * s3 - 15 * s4 + 6 * s5) + D1 * (-4 * s3 + 7 * s4 - 3 * s5) +
           A1 * (0.5 * s3 - s4 + 0.5 * s5);
}

Complex quintic_derivative(double s, double h, Complex y0, Complex d0, Complex a0, Complex y1,
                           Complex d1, Complex a1) {
    const Complex D0 = d0 * h, D1 = d1 * h;
    const Complex A0 = a0 * h * h, A1 = a1 * h * h;
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s;
    const Complex ds = y0 * (-30 * s2 + 60 * s3 - 30 * s4) +
                       D0 * (1 - 18 * s2 + 32 * s3 - 15 * s4) +
                       A0 * (s - 4.5 * s2 + 6 * s3 - 2.5 * s4) +
                       y1 * (30 * s2 - 60 * s3 + 30 * s4) +
                       D1 * (-12 * s2 + 28 * s3 - 15 * s4) +
                       A1 * (1.5 * s2 - 4 * s3 + 2.5 * s4);
    return ds / h;
}

Complex cubic(double s, double h, Complex y0, Complex d0, Complex y1, Complex d1) {
    const Complex D0 = d0 * h, D1 = d1 * h;
    const double s2 = s * s, s3 = s2 * s;
    return y0 * (2 * s3 - 3 * s2 + 1) + D0 * (s3 - 2 * s2 + s) + y1 * (-2 * s3 + 3 * s2) +
           D1 * (s3 - s2);
}

}  // namespace

AuxInitialData default_initial_data(const CoeffExpr& g2, double tprime0) {
    const double w0 = std::sqrt(std::max(2.0 * g2.eval(tprime0), 1e-6));
    const double a = 1.0 / std::sqrt(2.0 * w0);
    return {Complex(a, 0.0), Complex(0.0, w0 * a)};
}

Complex AuxSolution::wronskian(std::size_t i) const {
    return wronskian_of(xi_[i], xi_dot_[i]);
}

std::size_t AuxSolution::interval_of(double tprime) const {
    const double lo = grid_.front(), hi = grid_.back();
    if (tprime < lo - 1e-12 || tprime > hi + 1e-12)
        throw EvalError("t' outside the solved window");
    auto it = std::upper_bound(grid_.begin(), grid_.end(), tprime);
    std::size_t i = (it == grid_.begin()) ? 0 : static_cast<std::size_t>(it - grid_.begin()) - 1;
    if (i + 1 >= grid_.size()) i = grid_.size() - 2;
    return i;
}

Complex AuxSolution::xi_at(double tprime) const {
    const std::size_t i = interval_of(tprime);
    const double h = grid_[i + 1] - grid_[i];
    const double s = std::clamp((tprime - grid_[i]) / h, 0.0, 1.0);
    return quintic(s, h, xi_[i], xi_dot_[i], xi_ddot_[i], xi_[i + 1], xi_dot_[i + 1],
                   xi_ddot_[i + 1]);
}

Complex AuxSolution::xi_dot_at(double tprime) const {
    const std::size_t i = interval_of(tprime);
    const double h = grid_[i + 1] - grid_[i];
    const double s = std::clamp((tprime - grid_[i]) / h, 0.0, 1.0);
    return quintic_derivative(s, h, xi_[i], xi_dot_[i], xi_ddot_[i], xi_[i + 1], xi_dot_[i + 1],
                              xi_ddot_[i + 1]);
}

Complex AuxSolution::c_at(double tprime) const {
    if (c_.empty())
        throw EvalError("drift integral not filled; call integrate_c first");
    const std::size_t i = interval_of(tprime);
    const double h = grid_[i + 1] - grid_[i];
    const double s = std::clamp((tprime - grid_[i]) / h, 0.0, 1.0);
    return cubic(s, h, c_[i], c_dot_[i], c_[i + 1], c_dot_[i + 1]);
}

AuxSolution solve_auxiliary(const CoeffExpr& g2, std::span<const double> grid_tprime,
                            AuxInitialData init, AuxTolerances tol) {
    if (grid_tprime.size() < 2)
        throw ConfigError("auxiliary solve needs at least 2 grid points");
    for (std::size_t i = 1; i < grid_tprime.size(); ++i)
        if (!(grid_tprime[i] > grid_tprime[i - 1]))
            throw ConfigError("auxiliary grid must be strictly increasing");

    const Complex w0 = wronskian_of(init.xi, init.xi_dot);
    const double defect0 = std::abs(w0 + Complex(0.0, 1.0));
    if (defect0 > kWronskianInitTol)
        throw InvalidInitialData(
            "initial data violates the Wronskian normalization W = -i", defect0);

    AuxSolution sol;
    sol.grid_.assign(grid_tprime.begin(), grid_tprime.end());
    sol.xi_.resize(sol.grid_.size());
    sol.xi_dot_.resize(sol.grid_.size());
    sol.xi_ddot_.resize(sol.grid_.size());

    Dopri5 stepper(g2, tol);
    State y{init.xi, init.xi_dot};
    auto monitor = [&](double t, const State& s) {
        const double defect = std::abs(wronskian_of(s.xi, s.xi_dot) + Complex(0.0, 1.0));
        if (defect > tol.wronskian_failure)
            throw WronskianDriftError("Wronskian invariant lost during integration", defect, t);
    };

    sol.xi_[0] = y.xi;
    sol.xi_dot_[0] = y.xi_dot;
    sol.xi_ddot_[0] = -2.0 * g2.eval(sol.grid_[0]) * y.xi;
    for (std::size_t i = 1; i < sol.grid_.size(); ++i) {
        y = stepper.advance(sol.grid_[i - 1], sol.grid_[i], y, monitor);
        sol.xi_[i] = y.xi;
        sol.xi_dot_[i] = y.xi_dot;
        sol.xi_ddot_[i] = -2.0 * g2.eval(sol.grid_[i]) * y.xi;
    }
    return sol;
}

AuxSolution solve_auxiliary(const CoeffExpr& g2, double tp0, double tp1, std::size_t n_samples,
                            AuxInitialData init, AuxTolerances tol) {
    if (!(tp1 > tp0) || n_samples < 2)
        throw ConfigError("bad auxiliary window");
    std::vector<double> grid(n_samples);
    const double dt = (tp1 - tp0) / static_cast<double>(n_samples - 1);
    for (std::size_t i = 0; i < n_samples; ++i)
        grid[i] = (i + 1 == n_samples) ? tp1 : tp0 + dt * static_cast<double>(i);
    return solve_auxiliary(g2, grid, init, tol);
}

AuxSolution solve_auxiliary(const CoeffExpr& g2, double tp0, double tp1, std::size_t n_samples,
                            AuxTolerances tol) {
    return solve_auxiliary(g2, tp0, tp1, n_samples, default_initial_data(g2, tp0), tol);
}

AuxSolution integrate_c(const CoeffExpr& g1, AuxSolution sol, Complex c_naught) {
    const std::size_t n = sol.grid_.size();
    sol.c_.assign(n, Complex{});
    sol.c_dot_.resize(n);
    sol.c_naught_ = c_naught;

    for (std::size_t i = 0; i < n; ++i)
        sol.c_dot_[i] = g1.eval(sol.grid_[i]) * sol.xi_[i];

    if (g1.is_literal_zero()) return sol;  // c stays identically 0

    Complex acc{};
    for (std::size_t i = 1; i < n; ++i) {
        auto integrand = [&](double s) { return g1.eval(s) * sol.xi_at(s); };
        acc += adaptive_simpson<Complex>(integrand, sol.grid_[i - 1], sol.grid_[i], 1e-13);
        sol.c_[i] = acc;
    }
    return sol;
}

RawAuxResult integrate_auxiliary_raw(const CoeffExpr& g2, std::span<const double> grid_tprime,
                                     Complex gamma0, Complex gamma_dot0, AuxTolerances tol) {
    RawAuxResult out;
    out.gamma.resize(grid_tprime.size());
    out.gamma_dot.resize(grid_tprime.size());
    Dopri5 stepper(g2, tol);
    State y{gamma0, gamma_dot0};
    out.gamma[0] = y.xi;
    out.gamma_dot[0] = y.xi_dot;
    for (std::size_t i = 1; i < grid_tprime.size(); ++i) {
        y = stepper.advance(grid_tprime[i - 1], grid_tprime[i], y, [](double, const State&) {});
        out.gamma[i] = y.xi;
        out.gamma_dot[i] = y.xi_dot;
    }
    return out;
}

}  // namespace tdse
