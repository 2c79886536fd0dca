#include <doctest.h>

#include <cmath>
#include <complex>

#include "tdse/aux_solver.hpp"
#include "tdse/errors.hpp"

using tdse::AuxInitialData;
using tdse::AuxTolerances;
using tdse::CoeffExpr;
using tdse::Complex;

namespace {
const Complex kMinusI{0.0, -1.0};
constexpr double kInvSqrt2 = 0.70710678118654752;
}  // namespace

TEST_CASE("default initial data satisfies W = -i exactly") {
    auto g2 = CoeffExpr::parse("0.5");
    auto d = tdse::default_initial_data(g2, 0.0);
    CHECK(d.xi.real() == doctest::Approx(kInvSqrt2).epsilon(1e-15));
    CHECK(d.xi_dot.imag() == doctest::Approx(kInvSqrt2).epsilon(1e-15));
    const Complex w = d.xi * std::conj(d.xi_dot) - d.xi_dot * std::conj(d.xi);
    CHECK(std::abs(w - kMinusI) <= 1e-15);
}

TEST_CASE("SHO reference: xi = e^{i t'}/sqrt(2)") {
    auto g2 = CoeffExpr::parse("0.5");
    auto sol = tdse::solve_auxiliary(g2, 0.0, M_PI, 201);

    // endpoint value from the closed form
    CHECK(sol.xi().back().real() == doctest::Approx(-kInvSqrt2).epsilon(1e-9));
    CHECK(std::abs(sol.xi().back().imag()) <= 1e-9);

    // Wronskian: exact at the start, conserved to 1e-9 everywhere
    CHECK(std::abs(sol.wronskian(0) - kMinusI) <= 1e-15);
    for (std::size_t i = 0; i < sol.size(); ++i)
        CHECK(std::abs(sol.wronskian(i) - kMinusI) <= 1e-9);

    // dense output between samples against the closed form
    for (double tp : {0.1234, 1.005, 2.71828}) {
        const Complex exact = std::exp(Complex(0.0, tp)) * kInvSqrt2;
        CHECK(std::abs(sol.xi_at(tp) - exact) <= 1e-11);
        CHECK(std::abs(sol.xi_dot_at(tp) - Complex(0.0, 1.0) * exact) <= 1e-9);
    }
}

TEST_CASE("free particle: xi = 1 + i t'/2 with W = -i identically") {
    auto g2 = CoeffExpr::parse("0");
    auto sol = tdse::solve_auxiliary(g2, 0.0, 5.0, 101,
                                     AuxInitialData{Complex(1.0, 0.0), Complex(0.0, 0.5)});
    for (std::size_t i = 0; i < sol.size(); ++i) {
        const double tp = sol.grid_tprime()[i];
        CHECK(std::abs(sol.xi()[i] - Complex(1.0, 0.5 * tp)) <= 1e-12);
        CHECK(std::abs(sol.wronskian(i) - kMinusI) <= 1e-12);
    }
}

TEST_CASE("degenerate initial data is rejected") {
    auto g2 = CoeffExpr::parse("0.5");
    CHECK_THROWS_AS(tdse::solve_auxiliary(g2, 0.0, 1.0, 11,
                                          AuxInitialData{Complex(1.0, 0.0), Complex(1.0, 0.0)}),
                    tdse::InvalidInitialData);
}

TEST_CASE("Wronskian conservation over long windows") {
    for (const char* src : {"0.5", "0", "0.5+0.25*cos(3*t)", "1/(2*(1+t^2))"}) {
        auto g2 = CoeffExpr::parse(src);
        auto sol = tdse::solve_auxiliary(g2, 0.0, 50.0, 1001);
        double worst = 0.0;
        for (std::size_t i = 0; i < sol.size(); ++i)
            worst = std::max(worst, std::abs(sol.wronskian(i) - kMinusI));
        INFO("g2 = ", src);
        CHECK(worst <= 1e-9);
    }
}

TEST_CASE("a sloppy integration trips the Wronskian monitor") {
    auto g2 = CoeffExpr::parse("0.5");
    AuxTolerances loose{1e-3, 1e-3, 1e-10};
    CHECK_THROWS_AS(tdse::solve_auxiliary(g2, 0.0, 20.0, 21, loose), tdse::WronskianDriftError);
}

TEST_CASE("raw integrator is linear in the initial data") {
    auto g2 = CoeffExpr::parse("0.5+0.25*cos(3*t)");
    std::vector<double> grid;
    for (int i = 0; i <= 100; ++i) grid.push_back(0.08 * i);

    const Complex scale(2.0, 1.0);
    auto base = tdse::integrate_auxiliary_raw(g2, grid, Complex(0.9, -0.1), Complex(0.2, 0.7));
    auto scaled = tdse::integrate_auxiliary_raw(g2, grid, scale * Complex(0.9, -0.1),
                                                scale * Complex(0.2, 0.7));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(std::abs(scaled.gamma[i] - scale * base.gamma[i]) <= 1e-9);
        CHECK(std::abs(scaled.gamma_dot[i] - scale * base.gamma_dot[i]) <= 1e-9);
    }
}

TEST_CASE("drift integral") {
    SUBCASE("zero drive leaves c identically zero and C = C0") {
        auto sol = tdse::solve_auxiliary(CoeffExpr::parse("0.5"), 0.0, 3.0, 61);
        sol = tdse::integrate_c(CoeffExpr::parse("0"), std::move(sol), Complex(0.25, -1.0));
        for (std::size_t i = 0; i < sol.size(); ++i) {
            CHECK(sol.c_integral()[i] == Complex(0.0, 0.0));
            CHECK(sol.big_c(i) == Complex(0.25, -1.0));
        }
    }
    SUBCASE("SHO with unit drive: c = (e^{i t'} - 1)/(i sqrt(2))") {
        auto sol = tdse::solve_auxiliary(CoeffExpr::parse("0.5"), 0.0, M_PI, 201);
        sol = tdse::integrate_c(CoeffExpr::parse("1"), std::move(sol), Complex{});
        for (std::size_t i = 0; i < sol.size(); ++i) {
            const double tp = sol.grid_tprime()[i];
            const Complex exact =
                (std::exp(Complex(0.0, tp)) - 1.0) / (Complex(0.0, 1.0) * std::sqrt(2.0));
            CHECK(std::abs(sol.c_integral()[i] - exact) <= 1e-9);
        }
        // endpoint from the worked value: C(pi) = i sqrt(2)
        CHECK(std::abs(sol.big_c(sol.size() - 1) - Complex(0.0, std::sqrt(2.0))) <= 1e-9);
    }
    SUBCASE("free particle with unit drive: c = t' + i t'^2/4") {
        auto sol = tdse::solve_auxiliary(CoeffExpr::parse("0"), 0.0, 4.0, 81,
                                         AuxInitialData{Complex(1.0, 0.0), Complex(0.0, 0.5)});
        sol = tdse::integrate_c(CoeffExpr::parse("1"), std::move(sol), Complex{});
        for (std::size_t i = 0; i < sol.size(); ++i) {
            const double tp = sol.grid_tprime()[i];
            CHECK(std::abs(sol.c_integral()[i] - Complex(tp, 0.25 * tp * tp)) <= 1e-10);
        }
        // dense c between samples
        CHECK(std::abs(sol.c_at(1.3) - Complex(1.3, 0.25 * 1.3 * 1.3)) <= 1e-10);
    }
}
