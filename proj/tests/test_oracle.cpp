#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "polaron1d/energy.hpp"
#include "polaron1d/oracle/assembly.hpp"
#include "polaron1d/oracle/fd_solver.hpp"
#include "polaron1d/oracle/quadrature.hpp"
#include "polaron1d/profiles.hpp"

using namespace polaron1d;

namespace {
double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b)); }
}

TEST_CASE("adaptive quadrature on known integrals") {
    using oracle::integrate;
    // smooth gaussian
    const double g = integrate([](double x) { return std::exp(-x * x); }, -10.0, 10.0);
    CHECK(rel(g, std::sqrt(constants::pi)) <= 1e-12);
    // kink at zero handled via breakpoint
    const double k = integrate([](double x) { return std::exp(-std::fabs(x)); }, -40.0, 40.0,
                               {}, {0.0});
    CHECK(rel(k, 2.0) <= 1e-12);
    // orientation
    const double r = integrate([](double x) { return x; }, 1.0, 0.0);
    CHECK(r == Catch::Approx(-0.5).epsilon(1e-13));
}

TEST_CASE("convolve_green basics") {
    const double eta = 6e6;

    SECTION("delta-like density recovers the bare Green function") {
        const auto rho = ImpurityDensity::single_site(2e-7, 1e-12 / eta * 1e6);
        for (double x : {0.0, 2e-7, 5e-7}) {
            const double v = oracle::convolve_green(eta, rho, x);
            const double g = std::exp(-eta * std::fabs(x - 2e-7)) / (2.0 * eta);
            CHECK(rel(v, g) <= 1e-6);
        }
    }

    SECTION("symmetric density gives an even result") {
        const auto rho = ImpurityDensity::pair(4e-7, 1.5e-7);
        for (double x : {1e-7, 3e-7, 9e-7})
            CHECK(rel(oracle::convolve_green(eta, rho, x),
                      oracle::convolve_green(eta, rho, -x)) <= 1e-10);
    }

    SECTION("gaussian density equals the closed kernel") {
        const auto p = reference_params();
        const auto rho = ImpurityDensity::single_site(0.0, p.sigma);
        for (double x : {0.0, 1e-7, 6e-7, 1.2e-6})
            CHECK(rel(oracle::convolve_green(eta, rho, x), f_kernel(p.sigma, eta, x)) <= 1e-8);
    }
}

TEST_CASE("q_quadrature consistency") {
    const double sigma = 2e-7;

    SECTION("degenerate point matches the equal-eta closed form") {
        const double eta = 7e6;
        const double quad = oracle::q_quadrature(sigma, eta, eta, 0.0);
        const double closed = q_integral(sigma, eta, eta, 0.0);
        CHECK(rel(quad, closed) <= 1e-7);
    }

    SECTION("far-field decay slope follows the slower mode") {
        const double ei = 9e6, ej = 5e6;
        const double d1 = 12.0 / ej, d2 = 14.0 / ej;
        const double q1 = oracle::q_quadrature(sigma, ei, ej, d1);
        const double q2 = oracle::q_quadrature(sigma, ei, ej, d2);
        const double slope = -std::log(q2 / q1) / (d2 - d1);
        CHECK(slope == Catch::Approx(ej).epsilon(0.02));
    }

    SECTION("positive everywhere sampled") {
        for (double d : {0.0, 5e-7, 2e-6})
            CHECK(oracle::q_quadrature(sigma, 4e6, 1.1e7, d) > 0.0);
    }
}

TEST_CASE("solve_fd mechanics") {
    const auto p = reference_params();
    const RamanDrive dr{0.0};
    const auto m = effective_modes(p, dr);

    SECTION("zero source gives the zero solution") {
        auto rho = ImpurityDensity::single_site(0.0, p.sigma, 0.0);
        const auto sol = oracle::solve_fd(p, dr, rho, 0.02 / m.eta_plus, 14.0 / m.eta_minus);
        for (double v : sol.theta_A) CHECK(v == 0.0);
        for (double v : sol.theta_B) CHECK(v == 0.0);
    }

    SECTION("boundary values decay below 1e-10 of the peak") {
        const auto rho = ImpurityDensity::single_site(0.0, p.sigma);
        const auto sol = oracle::solve_fd(p, dr, rho, 0.01 / m.eta_plus, 16.0 / m.eta_minus);
        double peak = 0.0;
        for (double v : sol.theta_A) peak = std::max(peak, std::fabs(v));
        CHECK(std::fabs(sol.theta_A[1]) <= 1e-9 * peak);
        CHECK(std::fabs(sol.theta_A[sol.grid.size() - 2]) <= 1e-9 * peak);
        CHECK(sol.residual_norm <= 1e-10);
    }

    SECTION("grid preconditions enforced") {
        const auto rho = ImpurityDensity::single_site(0.0, p.sigma);
        CHECK_THROWS_AS(oracle::solve_fd(p, dr, rho, 1.0 / m.eta_plus, 16.0 / m.eta_minus),
                        grid_too_coarse);
        CHECK_THROWS_AS(oracle::solve_fd(p, dr, rho, 0.01 / m.eta_plus, 2.0 / m.eta_minus),
                        grid_too_coarse);
    }

    SECTION("unstable mixture reported as singular") {
        auto q = p;
        q.g_AB = 3.0 * std::sqrt(q.g_AA * q.g_BB);
        const auto rho = ImpurityDensity::single_site(0.0, q.sigma);
        CHECK_THROWS_AS(oracle::solve_fd(q, dr, rho, 1e-9, 5e-6), singular_system);
    }
}

TEST_CASE("solve_fd matches analytic profiles at second order") {
    const auto p = reference_params();
    const RamanDrive dr{0.0};
    const auto m = effective_modes(p, dr);
    const auto rho = ImpurityDensity::single_site(0.0, p.sigma);

    double devs[3];
    for (int k = 0; k < 3; ++k) {
        const double h = 0.01 / m.eta_plus / (1 << k);
        const auto sol = oracle::solve_fd(p, dr, rho, h, 16.0 / m.eta_minus);
        const auto prof = effective_deformations(p, dr, rho, sol.grid);
        double dev = 0.0, peak = 0.0;
        for (std::size_t i = 0; i < sol.grid.size(); ++i) {
            dev = std::max({dev, std::fabs(sol.theta_A[i] - prof.theta_A[i]),
                            std::fabs(sol.theta_B[i] - prof.theta_B[i])});
            peak = std::max({peak, std::fabs(prof.theta_A[i]), std::fabs(prof.theta_B[i])});
        }
        devs[k] = dev / peak;
    }
    CHECK(devs[0] <= 1e-4);
    CHECK(std::log2(devs[0] / devs[1]) == Catch::Approx(2.0).margin(0.1));
    CHECK(std::log2(devs[1] / devs[2]) == Catch::Approx(2.0).margin(0.1));
}

TEST_CASE("energy_from_profiles with no impurity weight") {
    const auto p = reference_params();
    const RamanDrive dr{0.0};
    const auto m = effective_modes(p, dr);
    auto rho = ImpurityDensity::single_site(0.0, p.sigma, 0.0);
    const auto sol = oracle::solve_fd(p, dr, rho, 0.02 / m.eta_plus, 14.0 / m.eta_minus);
    CHECK(oracle::energy_from_profiles(p, dr, rho, sol) == 0.0);
}

TEST_CASE("general densities: oracle handles what closed forms refuse") {
    auto p = reference_params();
    p.n0_B = 1.4 * p.n0_A;
    const RamanDrive dr{3000.0};
    const auto rho = ImpurityDensity::single_site(0.0, p.sigma);
    const auto cm = coupling_matrix(p, dr);
    const double tr = cm.trace();
    const double disc = std::sqrt(tr * tr - 4.0 * cm.det());
    const double eta_max = std::sqrt(0.5 * (tr + disc));
    const double eta_min = std::sqrt(cm.det() / (0.5 * (tr + disc)));
    const auto sol = oracle::solve_fd(p, dr, rho, 0.01 / eta_max, 14.0 / eta_min);
    CHECK(sol.residual_norm <= 1e-10);
    const double e = oracle::energy_from_profiles(p, dr, rho, sol);
    CHECK(std::isfinite(e));
    CHECK(e < oracle::a0_per_impurity(p));  // deformation always binds
}
