#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "polaron1d/config.hpp"
#include "polaron1d/constants.hpp"
#include "polaron1d/params.hpp"

using namespace polaron1d;
namespace pc = polaron1d::constants;

TEST_CASE("reference parameter set") {
    const auto p = reference_params();
    CHECK(p.g_AA == 2.08e-37);
    CHECK(p.g_AB == 2.03e-37);
    CHECK(p.g_BB == 1.99e-37);
    CHECK(p.g_abA == 100.0 * p.g_AA);
    CHECK(p.n0_A == 3e6);
    CHECK(p.sigma == 200e-9);
    CHECK(p.lattice_a == 532e-9);
    CHECK(p.omega_perp == Catch::Approx(2 * pc::pi * 34e3));
    CHECK(p.omega_long == Catch::Approx(2 * pc::pi * 18e3));
    CHECK(p.m_b == Catch::Approx(86.909180527 * pc::atomic_mass_unit));
    CHECK(p.density_convention == DensityConvention::per_component);
    CHECK_NOTHROW(p.validate());
    CHECK(p.sigma < p.lattice_a);
    CHECK(p.equal_densities());
}

TEST_CASE("validation rejects nonpositive inputs") {
    auto p = reference_params();
    p.n0_B = 0.0;
    CHECK_THROWS_AS(p.validate(), validation_error);
    p = reference_params();
    p.g_AA = -1e-40;
    CHECK_THROWS_AS(p.validate(), validation_error);
    CHECK_THROWS_AS((RamanDrive{-1.0}.validate()), validation_error);
}

TEST_CASE("warnings: 1D validity and sigma vs lattice") {
    auto p = reference_params();
    CHECK(p.warnings().empty());  // reference set satisfies the 1D condition
    p.sigma = 2.0 * p.lattice_a;
    const auto w = p.warnings();
    bool found = false;
    for (const auto& s : w)
        if (s.find("lattice") != std::string::npos) found = true;
    CHECK(found);

    p = reference_params();
    p.n0_A = p.n0_B = 100.0 * p.n0_A;  // break the 1D condition
    bool oned = false;
    for (const auto& s : p.warnings())
        if (s.find("1D validity") != std::string::npos) oned = true;
    CHECK(oned);
}

TEST_CASE("g1d_from_3d limits and monotonicity") {
    const double m_red = 0.5 * pc::mass_rb87;
    const double omega = 2 * pc::pi * 34e3;
    CHECK(g1d_from_3d(0.0, m_red, omega) == 0.0);

    // weak-confinement limit: g ~ 2 hbar^2 a / (m a_perp^2)
    const double a_perp = std::sqrt(pc::hbar / (m_red * omega));
    const double a3d = 1e-3 * a_perp;
    const double lead = 2.0 * pc::hbar * pc::hbar * a3d / (m_red * a_perp * a_perp);
    const double g = g1d_from_3d(a3d, m_red, omega);
    CHECK(std::fabs(g - lead) / lead < pc::olshanii_c * a3d / a_perp * 1.01);

    // monotone increasing on a3d < a_perp / C
    double prev = 0.0;
    for (int i = 1; i <= 40; ++i) {
        const double a = 0.9 * a_perp / pc::olshanii_c * i / 40.0;
        const double v = g1d_from_3d(a, m_red, omega);
        CHECK(v > prev);
        prev = v;
    }

    CHECK_THROWS_AS(g1d_from_3d(a_perp / pc::olshanii_c, m_red, omega), confinement_resonance);
}

TEST_CASE("g1d_from_3d inverts to a plausible Rb-87 scattering length") {
    // bisect a3d so that g1d matches the reference g_AA
    const double m_red = 0.5 * pc::mass_rb87;
    const double omega = 2 * pc::pi * 34e3;
    const double target = 2.08e-37;
    double lo = 0.0, hi = 2e-8;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g1d_from_3d(mid, m_red, omega) < target ? lo : hi) = mid;
    }
    const double a0 = 5.29177210903e-11;  // Bohr radius
    const double a3d = 0.5 * (lo + hi);
    INFO("recovered a3d = " << a3d / a0 << " a0");
    CHECK(a3d / a0 > 40.0);   // same ballpark as the known ~99 a0 triplet length
    CHECK(a3d / a0 < 160.0);
}

TEST_CASE("raman_from_two_photon") {
    const double k = 2 * pc::pi * 1e3;
    CHECK(raman_from_two_photon(0.0, 5.0, 1.0).omega_rabi == 0.0);
    const auto d = raman_from_two_photon(k, k, 4.0 * k);
    CHECK(d.omega_rabi == Catch::Approx(k).epsilon(1e-15));
    CHECK_THROWS_AS(raman_from_two_photon(k, k, 0.0), zero_detuning);
    CHECK_THROWS_AS(raman_from_two_photon(k, k, -4.0 * k), negative_coupling);
    // round trip at machine precision
    const double o1 = 2 * pc::pi * 700.0, o2 = 2 * pc::pi * 1300.0, det = 2 * pc::pi * 5e3;
    CHECK(raman_from_two_photon(o1, o2, det).omega_rabi == 4.0 * o1 * o2 / det);
}

TEST_CASE("config parsing with unit suffixes") {
    std::istringstream in(
        "# comment line\n"
        "n0_A = 3 um^-1\n"
        "n0_B = 3 um^-1\n"
        "sigma = 200 nm   # trailing comment\n"
        "lattice_a = 532 nm\n"
        "omega_perp = 34 kHz\n"
        "omega_long = 18 kHz\n"
        "g_AA = 2.08e-37 J*m\n"
        "g_AB = 2.03e-37\n"
        "g_BB = 1.99e-37 J*m\n"
        "g_abA = 2.08e-35\n"
        "g_abB = 2.08e-35\n"
        "m_b = 86.909180527 u\n"
        "m_a = 40.96182526 u\n"
        "omega_rabi = 921 Hz\n"
        "density_convention = per_component\n");
    const auto cfg = parse_config(in);
    CHECK(cfg.params.n0_A == 3e6);
    CHECK(cfg.params.sigma == Catch::Approx(200e-9).epsilon(1e-15));
    CHECK(cfg.params.omega_perp == Catch::Approx(2 * pc::pi * 34e3));
    CHECK(cfg.params.m_b == Catch::Approx(pc::mass_rb87));
    CHECK(cfg.drive.omega_rabi == Catch::Approx(2 * pc::pi * 921.0));
}

TEST_CASE("config errors carry line numbers and fail closed") {
    std::istringstream bad_key("sigma = 200 nm\nnot_a_key = 1\n");
    try {
        parse_config(bad_key);
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("unknown key") != std::string::npos);
    }

    std::istringstream bad_unit("sigma = 200 lightyears\n");
    CHECK_THROWS_AS(parse_config(bad_unit), config_error);

    std::istringstream bad_syntax("sigma 200\n");
    CHECK_THROWS_AS(parse_config(bad_syntax), config_error);

    std::istringstream bad_value("sigma = -200 nm\n");
    CHECK_THROWS(parse_config(bad_value));
}

TEST_CASE("rad/s suffix bypasses the 2*pi factor") {
    std::istringstream in("omega_rabi = 1000 rad/s\n");
    CHECK(parse_config(in).drive.omega_rabi == 1000.0);
    std::istringstream in2("omega_rabi = 1000\n");
    CHECK(parse_config(in2).drive.omega_rabi == 1000.0);
}
