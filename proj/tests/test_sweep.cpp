#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "polaron1d/sweep.hpp"

using namespace polaron1d;

TEST_CASE("GridSpec validation and spacing") {
    CHECK_THROWS_AS((GridSpec{0.0, 1.0, 1, false}.validate()), validation_error);
    CHECK_THROWS_AS((GridSpec{2.0, 1.0, 8, false}.validate()), validation_error);
    CHECK_THROWS_AS((GridSpec{0.0, 1.0, 8, true}.validate()), validation_error);

    const auto lin = GridSpec{0.0, 1.0, 5, false}.values();
    CHECK(lin.front() == 0.0);
    CHECK(lin.back() == 1.0);
    CHECK(lin[2] == Catch::Approx(0.5));

    const auto lg = GridSpec{1.0, 100.0, 3, true}.values();
    CHECK(lg[1] == Catch::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("distance sweep normalization anchors at contact") {
    const auto p = reference_params();
    const auto curve = sweep_distance(p, RamanDrive{0.0}, GridSpec{0.0, 2e-6, 9, false}, 2);
    REQUIRE(curve.points.size() == 9);
    CHECK(curve.points.front().normalized == Catch::Approx(-1.0).epsilon(1e-14));
    CHECK(std::fabs(curve.points.back().normalized) < 1e-3);
    // parallel evaluation produced the same bytes as serial
    const auto serial = sweep_distance(p, RamanDrive{0.0}, GridSpec{0.0, 2e-6, 9, false}, 1);
    for (std::size_t i = 0; i < 9; ++i)
        CHECK(curve.points[i].delta_e == serial.points[i].delta_e);
}

TEST_CASE("drive sweep: normalized columns start at unity") {
    const auto p = reference_params();
    const double om_lim = threshold_omega(p);
    const auto pts = sweep_omega_modes(p, GridSpec{1e-6 * om_lim, 2.0 * om_lim, 6, false}, 2);
    REQUIRE(pts.size() == 6);
    CHECK(pts.front().width_plus_norm == Catch::Approx(1.0).epsilon(1e-6));
    CHECK(pts.front().width_minus_norm == Catch::Approx(1.0).epsilon(1e-6));
    CHECK(pts.front().depth_plus_norm == Catch::Approx(1.0).epsilon(1e-5));
    CHECK(pts.front().single_total_norm == Catch::Approx(1.0).epsilon(1e-6));
    // widths shrink with the drive
    CHECK(pts.back().width_plus_norm < 1.0);
    CHECK(pts.back().width_minus_norm < 1.0);
    CHECK(pts.back().omega_over_limit == Catch::Approx(2.0));
}

TEST_CASE("surface sweep is omega-major and complete") {
    const auto p = reference_params();
    const double om_lim = threshold_omega(p);
    const auto curve =
        sweep_surface(p, GridSpec{1.0, om_lim, 3, false}, GridSpec{0.0, 1e-6, 4, false}, 2);
    REQUIRE(curve.points.size() == 12);
    CHECK(curve.kind == CurveKind::surface);
    CHECK(curve.points[0].abscissa == 1.0);
    CHECK(curve.points[3].abscissa == 1.0);
    CHECK(curve.points[4].abscissa > 1.0);
    CHECK(curve.points[1].abscissa2 > curve.points[0].abscissa2);
}
