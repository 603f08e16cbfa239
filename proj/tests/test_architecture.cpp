#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

// Source-level layering checks: the oracle integrators must not see the
// closed-form modules they certify, and the CLI must stay a thin shell over
// the public library surface.

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> includes_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        const auto pos = line.find("#include");
        if (pos == std::string::npos) continue;
        const auto q1 = line.find_first_of("\"<", pos);
        if (q1 == std::string::npos) continue;
        const auto q2 = line.find_first_of("\">", q1 + 1);
        if (q2 == std::string::npos) continue;
        out.push_back(line.substr(q1 + 1, q2 - q1 - 1));
    }
    return out;
}

const std::string root = POLARON1D_SOURCE_DIR;

}  // namespace

TEST_CASE("oracle headers do not import the closed-form modules") {
    for (const std::string file : {"include/polaron1d/oracle/quadrature.hpp",
                                   "include/polaron1d/oracle/fd_solver.hpp",
                                   "include/polaron1d/oracle/assembly.hpp"}) {
        const auto incs = includes_of(slurp(root + "/" + file));
        for (const auto& inc : incs) {
            INFO(file << " includes " << inc);
            CHECK(inc.find("modes.hpp") == std::string::npos);
            CHECK(inc.find("profiles.hpp") == std::string::npos);
            CHECK(inc.find("energy.hpp") == std::string::npos);
            CHECK(inc.find("sweep.hpp") == std::string::npos);
            CHECK(inc.find("verify.hpp") == std::string::npos);
        }
    }
}

TEST_CASE("closed-form energy paths never call raw std::erfc") {
    // every e^a erfc(b) product must run through exp_erfc/erfcx
    for (const std::string file :
         {"include/polaron1d/energy.hpp", "include/polaron1d/profiles.hpp"}) {
        const auto text = slurp(root + "/" + file);
        CHECK(text.find("std::erfc") == std::string::npos);
    }
}

TEST_CASE("CLI includes only the public library surface and vendor headers") {
    const auto incs = includes_of(slurp(root + "/tools/polaron1d_main.cpp"));
    for (const auto& inc : incs) {
        INFO("tools includes " << inc);
        const bool library = inc.rfind("polaron1d/", 0) == 0;
        const bool vendor = inc == "CLI11.hpp" || inc == "json.hpp";
        const bool standard = inc.find('.') == std::string::npos;  // <chrono>, <string>, ...
        CHECK((library || vendor || standard));
        // no private detail headers
        CHECK(inc.find("detail") == std::string::npos);
    }
}
