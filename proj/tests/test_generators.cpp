#include <doctest.h>

#include <cmath>

#include "tdse/generators.hpp"

using tdse::AuxInitialData;
using tdse::CoeffExpr;
using tdse::Complex;
using tdse::GaugeFunctions;
using tdse::SystemClass;
using tdse::TimeMap;

namespace {

const Complex kMinusI{0.0, -1.0};

tdse::AuxSolution sho_solution(double t_end = 10.0, std::size_t n = 201, const char* g1 = "0") {
    auto sol = tdse::solve_auxiliary(CoeffExpr::parse("0.5"), 0.0, t_end, n);
    return tdse::integrate_c(CoeffExpr::parse(g1), std::move(sol), Complex{});
}

}  // namespace

TEST_CASE("phi functions for the SHO: phi3' = 0 and phi1' = i e^{2 i t'}") {
    auto sol = sho_solution();
    auto phis = tdse::phi_functions(sol, CoeffExpr::parse("0.5"));
    for (std::size_t i = 0; i < phis.size(); ++i) {
        const double tp = phis.grid[i];
        CHECK(std::abs(phis.phi_dot[2][i]) <= 1e-9);
        CHECK(std::abs(phis.phi_dot[0][i] - Complex(0.0, 1.0) * std::exp(Complex(0.0, 2.0 * tp)))
              <= 1e-8);
        CHECK(std::abs(phis.phi[2][i].imag()) <= 1e-15);  // phi3 = 2|xi|^2
        CHECK(std::abs(phis.phi[1][i] - std::conj(phis.phi[0][i])) <= 1e-15);
    }
}

TEST_CASE("phi functions for the free particle") {
    auto sol = tdse::solve_auxiliary(CoeffExpr::parse("0"), 0.0, 5.0, 101,
                                     AuxInitialData{Complex(1.0, 0.0), Complex(0.0, 0.5)});
    sol = tdse::integrate_c(CoeffExpr::parse("0"), std::move(sol), Complex{});
    auto phis = tdse::phi_functions(sol, CoeffExpr::parse("0"));
    for (std::size_t i = 0; i < phis.size(); ++i) {
        const double tp = phis.grid[i];
        CHECK(phis.phi[2][i].real() == doctest::Approx(2.0 * (1.0 + tp * tp / 4.0)).epsilon(1e-10));
        CHECK(phis.phi_dot[2][i].real() == doctest::Approx(tp).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("E/D functions") {
    SUBCASE("undriven: all E and D vanish") {
        auto sol = sho_solution();
        auto eds = tdse::ed_functions(sol, CoeffExpr::parse("0"));
        for (std::size_t i = 0; i < eds.size(); ++i)
            for (int j = 0; j < 3; ++j) {
                CHECK(std::abs(eds.e[j][i]) == 0.0);
                CHECK(std::abs(eds.d[j][i]) == 0.0);
            }
    }
    SUBCASE("driven SHO at t' = pi: D3 = -2; E3, D3 real everywhere") {
        auto sol = tdse::solve_auxiliary(CoeffExpr::parse("0.5"), 0.0, M_PI, 201);
        sol = tdse::integrate_c(CoeffExpr::parse("1"), std::move(sol), Complex{});
        auto eds = tdse::ed_functions(sol, CoeffExpr::parse("1"));
        CHECK(eds.d[2].back().real() == doctest::Approx(-2.0).epsilon(1e-8));
        for (std::size_t i = 0; i < eds.size(); ++i) {
            CHECK(std::abs(eds.e[2][i].imag()) <= 1e-10);
            CHECK(std::abs(eds.d[2][i].imag()) <= 1e-10);
        }
    }
}

TEST_CASE("Weyl coefficients: TO column for the SHO") {
    auto sol = sho_solution();
    auto tmap = TimeMap::identity(0.0, 10.0, 201);
    auto w = tdse::weyl_coefficients(SystemClass::TO, sol, GaugeFunctions::identity(), tmap);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Complex e = std::exp(Complex(0.0, w.grid[i]));
        CHECK(std::abs(w.g_p[i] - e * inv_sqrt2) <= 1e-9);
        CHECK(std::abs(w.g_x[i] - Complex(0.0, 1.0) * e * inv_sqrt2) <= 1e-9);
        CHECK(std::abs(w.pairing(i) - kMinusI) <= 1e-9);
    }
}

TEST_CASE("Weyl coefficients: identity gauge collapses TM and TQ onto TO") {
    const double t_end = 6.0;
    const std::size_t n = 121;
    auto gauge = GaugeFunctions::identity();
    auto g2 = CoeffExpr::parse("0.5");
    auto g1 = CoeffExpr::parse("1");

    auto tmap = TimeMap::build(gauge.nu, 0.0, t_end, n);
    auto make = [&](SystemClass cls) {
        std::vector<double> grid(cls == SystemClass::TO
                                     ? std::vector<double>(tmap.grid_t().begin(),
                                                           tmap.grid_t().end())
                                     : std::vector<double>(tmap.grid_tprime().begin(),
                                                           tmap.grid_tprime().end()));
        auto sol = tdse::solve_auxiliary(g2, grid, tdse::default_initial_data(g2, grid.front()));
        sol = tdse::integrate_c(g1, std::move(sol), Complex{});
        return tdse::weyl_coefficients(cls, sol, gauge, tmap);
    };

    auto to = make(SystemClass::TO);
    auto tm = make(SystemClass::TM);
    auto tqw = make(SystemClass::TQ);
    for (std::size_t i = 0; i < to.size(); ++i) {
        CHECK(std::abs(tm.g_p[i] - to.g_p[i]) <= 1e-10);
        CHECK(std::abs(tm.g_x[i] - to.g_x[i]) <= 1e-10);
        CHECK(std::abs(tm.g_i[i] - to.g_i[i]) <= 1e-10);
        CHECK(std::abs(tqw.g_p[i] - to.g_p[i]) <= 1e-10);
        CHECK(std::abs(tqw.g_x[i] - to.g_x[i]) <= 1e-10);
        CHECK(std::abs(tqw.f_p[i] - to.f_p[i]) <= 1e-10);
        CHECK(std::abs(tqw.f_x[i] - to.f_x[i]) <= 1e-10);
    }
}

TEST_CASE("Weyl coefficients: dressed TQ column") {
    auto gauge = GaugeFunctions{CoeffExpr::parse("t"), CoeffExpr::parse("1"),
                                CoeffExpr::parse("0.1")};
    auto g2 = CoeffExpr::parse("0.5");
    auto tmap = TimeMap::build(gauge.nu, 0.0, 2.0, 101);
    std::vector<double> grid(tmap.grid_tprime().begin(), tmap.grid_tprime().end());
    auto sol = tdse::solve_auxiliary(g2, grid, tdse::default_initial_data(g2, 0.0));
    sol = tdse::integrate_c(CoeffExpr::parse("0"), std::move(sol), Complex{});
    auto w = tdse::weyl_coefficients(SystemClass::TQ, sol, gauge, tmap);

    // hand substitution at t = 0: G_P = (1 + 0.2 i)/sqrt(2)
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(w.g_p[0] - Complex(inv_sqrt2, 0.2 * inv_sqrt2)) <= 1e-12);

    for (std::size_t i = 0; i < w.size(); ++i) {
        CHECK(std::abs(w.pairing(i) - kMinusI) <= 1e-9);
        CHECK(std::abs(w.f_p[i].real()) <= 1e-10);
        CHECK(std::abs(w.f_x[i].real()) <= 1e-10);
        // mu = 1 feeds the -i mu e^nu term of F_P
        const double en = std::exp(tmap.grid_t()[i]);
        const Complex f_p_table = -Complex(0.0, 1.0) * en;  // undriven: C-hat = 0
        CHECK(std::abs(w.f_p[i] - f_p_table) <= 1e-9 * en);
    }
}

TEST_CASE("TM hatted pair keeps the Wronskian analogue") {
    auto gauge = GaugeFunctions{CoeffExpr::parse("0.5*ln(1+t)"), CoeffExpr::parse("0"),
                                CoeffExpr::parse("0")};
    auto g2 = CoeffExpr::parse("0.5");
    auto tmap = TimeMap::build(gauge.nu, 0.0, 5.0, 201);
    std::vector<double> grid(tmap.grid_tprime().begin(), tmap.grid_tprime().end());
    auto sol = tdse::solve_auxiliary(g2, grid, tdse::default_initial_data(g2, 0.0));
    sol = tdse::integrate_c(CoeffExpr::parse("0"), std::move(sol), Complex{});
    auto w = tdse::weyl_coefficients(SystemClass::TM, sol, gauge, tmap);
    for (std::size_t i = 0; i < w.size(); ++i)
        CHECK(std::abs(w.pairing(i) - kMinusI) <= 1e-9);
}

TEST_CASE("su(1,1) rows") {
    auto g2 = CoeffExpr::parse("0.5");
    auto g0 = CoeffExpr::parse("0");

    SUBCASE("TO, SHO, undriven: M3 row has T-coefficient 1 and D-coefficient 0") {
        auto sol = sho_solution(8.0, 161);
        auto phis = tdse::phi_functions(sol, g2);
        auto eds = tdse::ed_functions(sol, CoeffExpr::parse("0"));
        auto tmap = TimeMap::identity(0.0, 8.0, 161);
        auto su = tdse::su11_coefficients(SystemClass::TO, phis, eds, g0,
                                          GaugeFunctions::identity(), tmap);
        for (std::size_t i = 0; i < su.size(); ++i) {
            CHECK(std::abs(su.rows[2].t[i] - 1.0) <= 1e-9);
            CHECK(std::abs(su.rows[2].d[i]) <= 1e-9);
            CHECK(std::abs(su.rows[2].p2[i]) == 0.0);
            // j = 3 row is real in the D and X^2 columns
            CHECK(std::abs(su.rows[2].d[i].imag()) <= 1e-12);
            CHECK(std::abs(su.rows[2].x2[i].imag()) <= 1e-12);
        }
    }

    SUBCASE("identity gauge: TM and TQ rows collapse onto the TO rows") {
        const std::size_t n = 81;
        auto gauge = GaugeFunctions::identity();
        auto tmap = TimeMap::build(gauge.nu, 0.0, 4.0, n);
        auto g1 = CoeffExpr::parse("1");
        auto sol = tdse::solve_auxiliary(
            g2, std::vector<double>(tmap.grid_t().begin(), tmap.grid_t().end()),
            tdse::default_initial_data(g2, 0.0));
        sol = tdse::integrate_c(g1, std::move(sol), Complex{});
        auto phis = tdse::phi_functions(sol, g2);
        auto eds = tdse::ed_functions(sol, g1);

        auto to = tdse::su11_coefficients(SystemClass::TO, phis, eds, g0, gauge, tmap);
        auto tm = tdse::su11_coefficients(SystemClass::TM, phis, eds, g0, gauge, tmap);
        // TQ with the gauge terms zeroed and h_j matching the hatted g_j
        tdse::TqSystem tq{CoeffExpr::parse("0"), CoeffExpr::parse("0"), CoeffExpr::parse("0"),
                          g0, g1, g2};
        auto tqr = tdse::su11_coefficients(SystemClass::TQ, phis, eds, g0, gauge, tmap, &tq);

        for (std::size_t i = 0; i < to.size(); ++i)
            for (int j = 0; j < 3; ++j) {
                CHECK(std::abs(tm.rows[j].t[i] - to.rows[j].t[i]) <= 1e-10);
                CHECK(std::abs(tm.rows[j].d[i] - to.rows[j].d[i]) <= 1e-10);
                CHECK(std::abs(tm.rows[j].p[i] - to.rows[j].p[i]) <= 1e-10);
                CHECK(std::abs(tm.rows[j].x2[i] - to.rows[j].x2[i]) <= 1e-10);
                CHECK(std::abs(tm.rows[j].x[i] - to.rows[j].x[i]) <= 1e-10);
                CHECK(std::abs(tm.rows[j].i[i] - to.rows[j].i[i]) <= 1e-10);
                CHECK(std::abs(tqr.rows[j].t[i] - to.rows[j].t[i]) <= 1e-10);
                CHECK(std::abs(tqr.rows[j].p2[i]) <= 1e-10);
                CHECK(std::abs(tqr.rows[j].d[i] - to.rows[j].d[i]) <= 1e-10);
                CHECK(std::abs(tqr.rows[j].p[i] - to.rows[j].p[i]) <= 1e-10);
                CHECK(std::abs(tqr.rows[j].x2[i] - to.rows[j].x2[i]) <= 1e-10);
                CHECK(std::abs(tqr.rows[j].x[i] - to.rows[j].x[i]) <= 1e-10);
                CHECK(std::abs(tqr.rows[j].i[i] - to.rows[j].i[i]) <= 1e-10);
            }
    }

    SUBCASE("TQ class without the coefficient block is rejected") {
        auto sol = sho_solution(2.0, 41);
        auto phis = tdse::phi_functions(sol, g2);
        auto eds = tdse::ed_functions(sol, CoeffExpr::parse("0"));
        auto tmap = TimeMap::identity(0.0, 2.0, 41);
        CHECK_THROWS_AS(tdse::su11_coefficients(SystemClass::TQ, phis, eds, g0,
                                                GaugeFunctions::identity(), tmap),
                        tdse::ConfigError);
    }
}
