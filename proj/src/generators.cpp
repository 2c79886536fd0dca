#include "tdse/generators.hpp"

#include <cmath>
#include <string>

#include "tdse/errors.hpp"

namespace tdse {

namespace {

Complex bar(Complex z) { return std::conj(z); }

}  // namespace

PhiFunctions phi_functions(const AuxSolution& sol, const CoeffExpr& g2) {
    const std::size_t n = sol.size();
    PhiFunctions out;
    out.grid.assign(sol.grid_tprime().begin(), sol.grid_tprime().end());
    for (auto* a : {&out.phi, &out.phi_dot, &out.phi_ddot})
        for (auto& v : *a) v.resize(n);

    auto xi = sol.xi();
    auto xd = sol.xi_dot();
    for (std::size_t i = 0; i < n; ++i) {
        const Complex x = xi[i], v = xd[i];
        const double g = g2.eval(out.grid[i]);

        out.phi[0][i] = x * x;
        out.phi[1][i] = bar(x) * bar(x);
        out.phi[2][i] = 2.0 * x * bar(x);

        out.phi_dot[0][i] = 2.0 * x * v;
        out.phi_dot[1][i] = 2.0 * bar(x) * bar(v);
        out.phi_dot[2][i] = 2.0 * (v * bar(x) + x * bar(v));

        // substitute xi'' = -2 g2 xi
        out.phi_ddot[0][i] = 2.0 * v * v - 4.0 * g * x * x;
        out.phi_ddot[1][i] = 2.0 * bar(v) * bar(v) - 4.0 * g * bar(x) * bar(x);
        out.phi_ddot[2][i] = 4.0 * v * bar(v) - 4.0 * g * (2.0 * x * bar(x));
    }
    return out;
}

EdFunctions ed_functions(const AuxSolution& sol, const CoeffExpr& g1) {
    if (!sol.has_c())
        throw EvalError("ed_functions requires the drift integral; call integrate_c first");

    const std::size_t n = sol.size();
    EdFunctions out;
    out.grid.assign(sol.grid_tprime().begin(), sol.grid_tprime().end());
    for (auto* a : {&out.e, &out.e_dot, &out.d})
        for (auto& v : *a) v.resize(n);

    auto xi = sol.xi();
    auto xd = sol.xi_dot();
    for (std::size_t i = 0; i < n; ++i) {
        const Complex x = xi[i], v = xd[i];
        const Complex C = sol.big_c(i), Cb = bar(C);
        const double g1v = g1.eval(out.grid[i]);
        const Complex Cdot = g1v * x;  // C' = g1 xi

        out.e[0][i] = -x * C;
        out.e[1][i] = -bar(x) * Cb;
        out.e[2][i] = -x * Cb - bar(x) * C;

        out.e_dot[0][i] = -v * C - x * Cdot;
        out.e_dot[1][i] = bar(out.e_dot[0][i]);
        out.e_dot[2][i] = -v * Cb - x * bar(Cdot) - bar(v) * C - bar(x) * Cdot;

        out.d[0][i] = -0.5 * C * C;
        out.d[1][i] = -0.5 * Cb * Cb;
        out.d[2][i] = -C * Cb;
    }
    return out;
}

Complex WeylCoefficients::pairing(std::size_t i) const {
    return g_p[i] * bar(g_x[i]) - bar(g_p[i]) * g_x[i];
}

WeylCoefficients weyl_coefficients(SystemClass cls, const AuxSolution& sol,
                                   const GaugeFunctions& gauge, const TimeMap& tmap) {
    WeylCoefficients w;
    w.cls = cls;

    const bool to = (cls == SystemClass::TO);
    if (to)
        w.grid.assign(sol.grid_tprime().begin(), sol.grid_tprime().end());
    else
        w.grid.assign(tmap.grid_t().begin(), tmap.grid_t().end());

    const std::size_t n = w.grid.size();
    if (!to && n != sol.size())
        throw ConfigError("time map and auxiliary solution grids disagree");

    w.g_p.resize(n);
    w.g_x.resize(n);
    w.g_i.resize(n);
    w.f_p.resize(n);
    w.f_x.resize(n);

    auto xi = sol.xi();
    auto xd = sol.xi_dot();
    const bool has_c = sol.has_c();

    for (std::size_t i = 0; i < n; ++i) {
        // For TM/TQ the sample order of the aux solution is the image of the
        // t-grid under t', so hatted values are just positional reads.
        const Complex xh = xi[i], vh = xd[i];
        const Complex Ch = has_c ? sol.big_c(i) : Complex{};

        switch (cls) {
            case SystemClass::TO:
            case SystemClass::TM:
                w.g_p[i] = xh;
                w.g_x[i] = vh;
                w.g_i[i] = Ch;
                break;
            case SystemClass::TQ: {
                const double t = w.grid[i];
                const double en = std::exp(gauge.nu.eval(t));
                const double kap = gauge.kappa.eval(t);
                const double mu = gauge.mu.eval(t);
                w.g_p[i] = xh * en + 2.0 * vh * kap / en;
                w.g_x[i] = vh / en;
                w.g_i[i] = Ch + mu * vh;
                break;
            }
        }
        w.f_p[i] = w.g_p[i] * bar(w.g_i[i]) - bar(w.g_p[i]) * w.g_i[i];
        w.f_x[i] = w.g_x[i] * bar(w.g_i[i]) - bar(w.g_x[i]) * w.g_i[i];
    }
    return w;
}

Su11Coefficients su11_coefficients(SystemClass cls, const PhiFunctions& phis,
                                   const EdFunctions& eds, const CoeffExpr& g0,
                                   const GaugeFunctions& gauge, const TimeMap& tmap,
                                   const TqSystem* tq_inputs, std::span<const double> tm_f0,
                                   std::string* warning) {
    if (cls == SystemClass::TQ && tq_inputs == nullptr)
        throw ConfigError("TQ su(1,1) rows need the quadratic-Hamiltonian inputs");
    if (phis.size() != eds.size())
        throw ConfigError("phi and E/D tables disagree in length");

    const std::size_t n = phis.size();
    Su11Coefficients out;
    out.cls = cls;

    const bool to = (cls == SystemClass::TO);
    if (to)
        out.grid = phis.grid;
    else {
        if (tmap.size() != n)
            throw ConfigError("time map and generator tables disagree in length");
        out.grid.assign(tmap.grid_t().begin(), tmap.grid_t().end());
    }

    for (auto& row : out.rows)
        for (auto* col : {&row.t, &row.p2, &row.d, &row.p, &row.x2, &row.x, &row.i})
            col->resize(n);

    double worst_g0_mismatch = 0.0;

    for (std::size_t i = 0; i < n; ++i) {
        const double tp = phis.grid[i];                    // t' sample
        const double t = to ? tp : out.grid[i];            // class time

        double e2n = 1.0, kap = 0.0, mu = 0.0;
        if (!to) {
            e2n = std::exp(2.0 * gauge.nu.eval(t));
            kap = gauge.kappa.eval(t);
            mu = gauge.mu.eval(t);
        }

        // g0-hat = (g0 o t'); with supplied f0 samples, e^{2 nu} f0 instead
        double g0_hat = g0.eval(tp);
        if (!to && !tm_f0.empty()) {
            const double alt = e2n * tm_f0[i];
            worst_g0_mismatch = std::max(worst_g0_mismatch, std::abs(alt - g0_hat));
            g0_hat = alt;
        }

        for (std::size_t j = 0; j < 3; ++j) {
            const Complex ph = phis.phi[j][i];
            const Complex phd = phis.phi_dot[j][i];
            const Complex phdd = phis.phi_ddot[j][i];
            const Complex E = eds.e[j][i];
            const Complex Ed = eds.e_dot[j][i];
            const Complex D = eds.d[j][i];
            Su11Row& row = out.rows[j];

            switch (cls) {
                case SystemClass::TO:
                    row.t[i] = ph;
                    row.p2[i] = 0.0;
                    row.d[i] = 0.5 * phd;
                    row.p[i] = E;
                    row.x2[i] = -0.25 * phdd;
                    row.x[i] = -Ed;
                    row.i[i] = D + g0_hat * ph;
                    break;
                case SystemClass::TM:
                    row.t[i] = ph * e2n;
                    row.p2[i] = 0.0;
                    row.d[i] = 0.5 * phd;
                    row.p[i] = E;
                    row.x2[i] = -0.25 * phdd;
                    row.x[i] = -Ed;
                    row.i[i] = D + g0_hat * ph;
                    break;
                case SystemClass::TQ: {
                    const double en = std::sqrt(e2n);
                    const double k = tq_inputs->k.eval(t);
                    const double h = tq_inputs->h.eval(t);
                    const double g = tq_inputs->g.eval(t);
                    const double h0 = tq_inputs->h0.eval(t);
                    const double h1 = tq_inputs->h1.eval(t);
                    const double h2 = tq_inputs->h2.eval(t);

                    row.t[i] = ph * e2n;
                    row.p2[i] = ph * (0.5 * k - 4.0 * h2 * kap * kap) * e2n - phd * kap -
                                phdd * kap * kap / e2n;
                    row.d[i] = ph * (-0.5 * h + 4.0 * h2 * kap) * e2n + 0.5 * phd +
                               phdd * kap / e2n;
                    row.p[i] = ph * (-0.5 * g + 2.0 * h1 * kap) * e2n + E * en -
                               0.5 * phd * mu * en - phdd * kap * mu / en + 2.0 * Ed * kap / en;
                    row.x2[i] = -0.25 * phdd / e2n;
                    row.x[i] = -Ed / en + 0.5 * phdd * mu / en;
                    row.i[i] = D - 0.25 * phdd * mu * mu + Ed * mu +
                               ph * (h0 + h1 * mu * en + h2 * mu * mu * e2n) * e2n;
                    break;
                }
            }
        }
    }

    if (warning != nullptr && worst_g0_mismatch > 1e-8)
        *warning = "g0-hat consistency: e^{2 nu} f0 and (g0 o t') disagree by " +
                   std::to_string(worst_g0_mismatch);
    return out;
}

}  // namespace tdse
