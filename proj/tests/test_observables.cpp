#include <doctest.h>

#include <cmath>
#include <numeric>

#include "tdse/errors.hpp"
#include "tdse/observables.hpp"

using tdse::AuxInitialData;
using tdse::CoeffExpr;
using tdse::Complex;
using tdse::GaugeFunctions;
using tdse::SqueezeParams;
using tdse::SystemClass;
using tdse::TimeMap;

namespace {

struct Setup {
    TimeMap tmap;
    tdse::AuxSolution sol;
    tdse::WeylCoefficients weyl;
};

Setup make_to(const char* g2_src, const char* g1_src, double t_end, std::size_t n,
              std::optional<AuxInitialData> init = {}) {
    auto g2 = CoeffExpr::parse(g2_src);
    auto tmap = TimeMap::identity(0.0, t_end, n);
    std::vector<double> grid(tmap.grid_t().begin(), tmap.grid_t().end());
    auto sol = tdse::solve_auxiliary(g2, grid,
                                     init ? *init : tdse::default_initial_data(g2, 0.0));
    sol = tdse::integrate_c(CoeffExpr::parse(g1_src), std::move(sol), Complex{});
    auto w = tdse::weyl_coefficients(SystemClass::TO, sol, GaugeFunctions::identity(), tmap);
    return {std::move(tmap), std::move(sol), std::move(w)};
}

}  // namespace

TEST_CASE("alpha from a phase-space point") {
    auto s = make_to("0.5", "0", 10.0, 201);

    SUBCASE("SHO: alpha = (x_o + i p_o)/sqrt(2)") {
        const Complex a = tdse::alpha_from_phase_point(s.weyl, 0, 1.0, 0.5);
        CHECK(std::abs(a - Complex(1.0, 0.5) / std::sqrt(2.0)) <= 1e-12);
    }
    SUBCASE("origin maps to alpha = 0") {
        CHECK(std::abs(tdse::alpha_from_phase_point(s.weyl, 0, 0.0, 0.0)) == 0.0);
    }
    SUBCASE("free particle with x_o = 1, p_o = 0 gives alpha = 1/2") {
        auto f = make_to("0", "0", 5.0, 101, AuxInitialData{Complex(1.0, 0.0), Complex(0.0, 0.5)});
        const Complex a = tdse::alpha_from_phase_point(f.weyl, 0, 1.0, 0.0);
        CHECK(std::abs(a - Complex(0.5, 0.0)) <= 1e-12);
    }
}

TEST_CASE("SHO coherent trajectory follows the rotating closed form") {
    auto s = make_to("0.5", "0", 10.0, 401);
    const double x_o = 1.0, p_o = 0.5;
    const Complex alpha = tdse::alpha_from_phase_point(s.weyl, 0, x_o, p_o);
    auto traj = tdse::evaluate_trajectory(s.weyl, alpha, {0.0, 0.0});
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double t = traj.grid[i];
        CHECK(std::abs(traj.x_mean[i] - (x_o * std::cos(t) + p_o * std::sin(t))) <= 1e-9);
        CHECK(std::abs(traj.p_mean[i] - (-x_o * std::sin(t) + p_o * std::cos(t))) <= 1e-9);
        CHECK(traj.var_x[i] == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(traj.var_p[i] == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(traj.product[i] == doctest::Approx(0.25).epsilon(1e-9));
    }
}

TEST_CASE("alpha = 0 and no drive pins the packet at the origin") {
    auto s = make_to("0.5", "0", 6.0, 121);
    auto traj = tdse::evaluate_trajectory(s.weyl, Complex{}, {0.0, 0.0});
    for (std::size_t i = 0; i < traj.size(); ++i) {
        CHECK(traj.x_mean[i] == 0.0);
        CHECK(traj.p_mean[i] == 0.0);
    }
}

TEST_CASE("free-particle packet spreads: var_x = 1 + t^2/4") {
    auto f = make_to("0", "0", 6.0, 121, AuxInitialData{Complex(1.0, 0.0), Complex(0.0, 0.5)});
    auto traj = tdse::evaluate_trajectory(f.weyl, Complex(0.5, 0.0), {0.0, 0.0});
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double t = traj.grid[i];
        CHECK(traj.var_x[i] == doctest::Approx(1.0 + 0.25 * t * t).epsilon(1e-10));
        CHECK(traj.var_x[i] > 0.0);
        CHECK(traj.var_p[i] > 0.0);
        CHECK(traj.product[i] >= 0.25 - 1e-12);
    }
}

TEST_CASE("squeezed SHO product matches the closed form") {
    auto s = make_to("0.5", "0", 10.0, 200);
    const SqueezeParams sq{0.5, 0.3};
    auto traj = tdse::evaluate_trajectory(s.weyl, Complex{}, sq);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i)
        worst = std::max(worst, std::abs(traj.product[i] -
                                         tdse::sho_squeezed_product(1.0, sq.r, sq.theta,
                                                                    traj.grid[i])));
    CHECK(worst <= 1e-9);
}

TEST_CASE("uncertainty structure") {
    auto s = make_to("0.5", "1", 8.0, 161);  // driven, so the F terms are live
    const Complex alpha(0.4, -0.2);

    SUBCASE("product identity and floor") {
        auto traj = tdse::evaluate_trajectory(s.weyl, alpha, {0.0, 0.0});
        for (std::size_t i = 0; i < traj.size(); ++i) {
            CHECK(traj.product[i] >= 0.25 - 1e-12);
            CHECK(std::abs(traj.var_x[i] * traj.var_p[i] - traj.product[i]) <= 1e-9);
        }
    }

    SUBCASE("squeezed product reduces to the coherent product at r = 0") {
        auto coherent = tdse::evaluate_trajectory(s.weyl, alpha, {0.0, 0.0});
        auto degenerate = tdse::evaluate_trajectory(s.weyl, alpha, {0.0, 1.234});
        for (std::size_t i = 0; i < coherent.size(); ++i) {
            CHECK(coherent.product[i] == degenerate.product[i]);
            CHECK(coherent.var_x[i] == degenerate.var_x[i]);
        }
    }

    SUBCASE("cosh coefficient equals the coherent variance, per sample") {
        auto coherent = tdse::evaluate_trajectory(s.weyl, alpha, {0.0, 0.0});
        for (std::size_t i = 0; i < coherent.size(); ++i) {
            const double cosh_coef = (s.weyl.g_p[i] * std::conj(s.weyl.g_p[i])).real();
            CHECK(std::abs(coherent.var_x[i] - cosh_coef) <= 1e-12);
        }
    }

    SUBCASE("squeezing leaves the means untouched") {
        auto a = tdse::evaluate_trajectory(s.weyl, alpha, {0.0, 0.0});
        auto b = tdse::evaluate_trajectory(s.weyl, alpha, {0.7, 0.4});
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(std::abs(a.x_mean[i] - b.x_mean[i]) <= 1e-10);
            CHECK(std::abs(a.p_mean[i] - b.p_mean[i]) <= 1e-10);
        }
    }
}

TEST_CASE("corrupted coefficients raise ImaginaryResidueError") {
    auto s = make_to("0.5", "0", 4.0, 41);
    s.weyl.f_p[7] += Complex(1e-6, 0.0);  // a real part F must never have
    CHECK_THROWS_AS(tdse::evaluate_trajectory(s.weyl, Complex(0.3, 0.0), {0.0, 0.0}),
                    tdse::ImaginaryResidueError);
}

TEST_CASE("class-specific product paths agree with the generic path") {
    const SqueezeParams sq{0.5, 0.3};
    auto g2 = CoeffExpr::parse("0.5");
    auto g1 = CoeffExpr::parse("1");

    auto run_class = [&](SystemClass cls, GaugeFunctions gauge) {
        auto tmap = (cls == SystemClass::TO) ? TimeMap::identity(0.0, 6.0, 121)
                                             : TimeMap::build(gauge.nu, 0.0, 6.0, 121);
        std::vector<double> grid(cls == SystemClass::TO
                                     ? std::vector<double>(tmap.grid_t().begin(),
                                                           tmap.grid_t().end())
                                     : std::vector<double>(tmap.grid_tprime().begin(),
                                                           tmap.grid_tprime().end()));
        auto sol = tdse::solve_auxiliary(g2, grid, tdse::default_initial_data(g2, grid.front()));
        sol = tdse::integrate_c(g1, std::move(sol), Complex{});
        auto w = tdse::weyl_coefficients(cls, sol, gauge, tmap);
        auto traj = tdse::evaluate_trajectory(w, Complex(0.2, 0.1), sq);
        auto phis = tdse::phi_functions(sol, g2);
        auto alt = tdse::class_product_path(cls, phis, sol, gauge, tmap, sq);
        double worst = 0.0;
        for (std::size_t i = 0; i < traj.size(); ++i)
            worst = std::max(worst, std::abs(traj.product[i] - alt[i]));
        return worst;
    };

    CHECK(run_class(SystemClass::TO, GaugeFunctions::identity()) <= 1e-9);
    CHECK(run_class(SystemClass::TM,
                    GaugeFunctions{CoeffExpr::parse("0.5*ln(1+t)"), CoeffExpr::parse("0"),
                                   CoeffExpr::parse("0")}) <= 1e-9);
    CHECK(run_class(SystemClass::TQ,
                    GaugeFunctions{CoeffExpr::parse("t"), CoeffExpr::parse("1"),
                                   CoeffExpr::parse("0.1")}) <= 1e-9);
}

TEST_CASE("truncated-operator path reproduces the closed form") {
    auto s = make_to("0.5", "0", 10.0, 20);
    std::vector<std::size_t> idx(s.weyl.size());
    std::iota(idx.begin(), idx.end(), 0);

    SUBCASE("extremal state matches to near rounding") {
        auto fk = tdse::fock_cross_check(s.weyl, Complex{}, {0.0, 0.0}, 40, idx);
        auto traj = tdse::evaluate_trajectory(s.weyl, Complex{}, {0.0, 0.0});
        for (std::size_t i = 0; i < idx.size(); ++i) {
            CHECK(std::abs(fk.x_mean[i] - traj.x_mean[i]) <= 1e-10);
            CHECK(std::abs(fk.var_x[i] - traj.var_x[i]) <= 1e-10);
        }
    }

    SUBCASE("coherent state at N = 40") {
        const Complex alpha(0.5, 0.2);
        auto fk = tdse::fock_cross_check(s.weyl, alpha, {0.0, 0.0}, 40, idx);
        auto traj = tdse::evaluate_trajectory(s.weyl, alpha, {0.0, 0.0});
        for (std::size_t i = 0; i < idx.size(); ++i) {
            CHECK(std::abs(fk.x_mean[i] - traj.x_mean[i]) <= 1e-8);
            CHECK(std::abs(fk.p_mean[i] - traj.p_mean[i]) <= 1e-8);
        }
    }

    SUBCASE("displaced squeezed state variances within 1e-6") {
        const Complex alpha(0.5, 0.0);
        const SqueezeParams sq{0.5, 0.3};
        auto fk = tdse::fock_cross_check(s.weyl, alpha, sq, 40, idx);
        auto traj = tdse::evaluate_trajectory(s.weyl, alpha, sq);
        for (std::size_t i = 0; i < idx.size(); ++i) {
            CHECK(std::abs(fk.var_x[i] - traj.var_x[i]) <= 1e-6);
            CHECK(std::abs(fk.var_p[i] - traj.var_p[i]) <= 1e-6);
        }
    }

    SUBCASE("out-of-guidance displacement reports a warning") {
        std::string warning;
        tdse::fock_cross_check(s.weyl, Complex(4.0, 0.0), {0.0, 0.0}, 40, idx, 1, &warning);
        CHECK(!warning.empty());
    }
}

TEST_CASE("Schrodinger-Robertson bound for the dimensionless pair") {
    SUBCASE("coherent states minimize the Heisenberg relation") {
        auto rep = tdse::sr_bound_check(Complex(0.5, 0.2), {0.0, 0.0}, 40);
        CHECK(std::abs(rep.product - 0.25) <= 1e-8);
        CHECK(std::abs(rep.covariance) <= 1e-10);
    }
    SUBCASE("squeezed states saturate the SR relation") {
        auto rep = tdse::sr_bound_check(Complex(0.5, 0.0), {0.5, 0.3}, 40);
        CHECK(rep.saturation_defect <= 1e-6);
        CHECK(rep.product >= rep.bound - 1e-6);
        CHECK(std::abs(rep.covariance) > 1e-3);  // genuinely correlated
    }
    SUBCASE("vacuum has no covariance") {
        auto rep = tdse::sr_bound_check(Complex{}, {0.0, 0.0}, 40);
        CHECK(std::abs(rep.covariance) <= 1e-14);
        CHECK(std::abs(rep.product - 0.25) <= 1e-12);
    }
}
