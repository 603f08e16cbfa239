#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "polaron1d/specfun.hpp"

using namespace polaron1d;

namespace {

struct RefRow {
    double x, erf, erfc, erfcx;
};

// 20-point 50-digit reference table generated offline with mpmath (dps = 60);
// see tests/data/generate_reference.py.
std::vector<RefRow> load_reference() {
    std::ifstream in(std::string(POLARON1D_SOURCE_DIR) + "/tests/data/specfun_reference.txt");
    REQUIRE(in.good());
    std::vector<RefRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        RefRow r{};
        ss >> r.x >> r.erf >> r.erfc >> r.erfcx;
        REQUIRE(ss);
        rows.push_back(r);
    }
    REQUIRE(rows.size() == 20);
    return rows;
}

}  // namespace

TEST_CASE("erf against the reference table") {
    for (const auto& r : load_reference())
        CHECK(std::fabs(polaron1d::erf(r.x) - r.erf) <= 1e-15);
}

TEST_CASE("erf basic values and symmetry") {
    CHECK(polaron1d::erf(0.0) == 0.0);
    CHECK(polaron1d::erf(40.0) == 1.0);  // saturation at double precision
    CHECK(std::fabs(polaron1d::erf(1.0) - 0.8427007929497149) <= 1e-16);
    for (double x : {0.1, 0.7, 1.3, 2.9, 5.5})
        CHECK(polaron1d::erf(-x) == -polaron1d::erf(x));
}

TEST_CASE("erfcx against the reference table") {
    for (const auto& r : load_reference()) {
        const double v = polaron1d::erfcx(r.x);
        CHECK(std::fabs(v - r.erfcx) <= 1e-13 * r.erfcx);
    }
}

TEST_CASE("erfcx values, bounds, large-argument stability") {
    CHECK(polaron1d::erfcx(0.0) == 1.0);
    CHECK(std::fabs(polaron1d::erfcx(1.0) - 0.4275835761558070) <= 1e-15);
    // sandwich bounds for x > 0
    const double spi = std::sqrt(3.14159265358979323846);
    for (double x : {0.3, 1.0, 2.5, 5.0, 12.0, 50.0, 400.0, 1e4}) {
        const double v = polaron1d::erfcx(x);
        CHECK(v >= 2.0 / (spi * (x + std::sqrt(x * x + 2.0))) * (1.0 - 4e-16));
        CHECK(v <= 2.0 / (spi * (x + std::sqrt(x * x + 4.0 / 3.14159265358979323846))) *
                       (1.0 + 4e-16));
    }
    // naive exp(2500)*erfc(50) overflows; the scaled form stays finite
    CHECK(std::isfinite(polaron1d::erfcx(50.0)));
    CHECK(std::isfinite(polaron1d::erfcx(1e4)));
}

TEST_CASE("erfcx branches agree at the evaluation seam") {
    // direct product below x = 5, continued fraction above; both sides
    // checked against mpmath (dps = 40)
    const double lo = polaron1d::erfcx(4.9999999999);
    const double hi = polaron1d::erfcx(5.0000000001);
    CHECK(std::fabs(lo - 0.1107046377352019053) <= 1e-13 * lo);
    CHECK(std::fabs(hi - 0.1107046377309353474) <= 1e-13 * hi);
}

TEST_CASE("erfc/erf complementarity and erfcx consistency") {
    for (double x = -6.0; x <= 6.0; x += 0.37)
        CHECK(std::fabs(polaron1d::erf(x) + polaron1d::erfc(x) - 1.0) <= 1e-15);
    for (double x = 0.0; x <= 25.0; x += 0.5) {
        const double lhs = polaron1d::erfcx(x) * std::exp(-x * x);
        CHECK(std::fabs(lhs - polaron1d::erfc(x)) <= 1e-13 * std::max(polaron1d::erfc(x), 1e-300));
    }
}

TEST_CASE("exp_erfc stable combinations") {
    CHECK(exp_erfc(0.0, 0.0) == 1.0);
    CHECK(std::fabs(exp_erfc(1.0, 1.0) - 0.4275835761558070) <= 1e-14);

    // a = b^2 identity: e^{b^2} erfc(b) = polaron1d::erfcx(b), even where both factors
    // are far out of double range
    for (double es : {1.0, 10.0, 100.0, 1e4}) {
        const double b = es / std::sqrt(2.0);
        const double v = exp_erfc(0.5 * es * es, b);
        // a - b^2 vanishes analytically but carries ulp(a) of rounding
        const double tol = 1e-13 + 4.0 * (0.5 * es * es) * 2.3e-16;
        CHECK(std::fabs(v - polaron1d::erfcx(b)) <= tol * polaron1d::erfcx(b));
    }

    // negative-b branch: e^a (2 - erfc(-b))
    for (double a : {-3.0, 0.0, 2.0})
        for (double b : {-0.2, -1.5, -4.0}) {
            const double expect = std::exp(a) * std::erfc(b);
            CHECK(std::fabs(exp_erfc(a, b) - expect) <= 1e-13 * expect);
        }

    CHECK_THROWS_AS(exp_erfc(800.0, 1.0), overflow_error);
    CHECK(stable_erfc_product(2.0, 3.0).value == exp_erfc(2.0, 3.0));
}

TEST_CASE("exp_erfc is nonnegative on random inputs") {
    std::mt19937_64 eng(20240617u);
    auto uni = [&](double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(eng() >> 11) * 0x1.0p-53;
    };
    for (int i = 0; i < 2000; ++i) {
        const double b = uni(-5.0, 60.0);
        const double a = b * b + uni(-300.0, 300.0);
        if (a > 690.0) continue;
        CHECK(exp_erfc(a, b) >= 0.0);
    }
}
