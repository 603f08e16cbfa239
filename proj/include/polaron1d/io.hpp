#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "polaron1d/config.hpp"
#include "polaron1d/energy.hpp"
#include "polaron1d/errors.hpp"
#include "polaron1d/profiles.hpp"

// CSV and manifest writers. Sweep CSVs use the shortest round-trip decimal
// representation so identical configs produce byte-identical files; profile
// CSVs use 17 significant digits as their documented fixed format.

namespace polaron1d {

/// Shortest decimal string that round-trips to the same double.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string format_double17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_config_comments(std::ostream& os, const Config& cfg) {
    os << "# polaron1d resolved config (SI units; frequencies angular)\n";
    for (const auto& [k, v] : cfg.resolved()) os << "# " << k << " = " << v << "\n";
}

/// Columns: x (m), theta_eff_plus, theta_eff_minus, theta_A, theta_B (m^-1/2).
inline void write_profile_csv(const std::string& path, const DeformationProfile& prof,
                              const Config& cfg) {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open '" + path + "' for writing");
    write_config_comments(os, cfg);
    os << "x,theta_eff_plus,theta_eff_minus,theta_A,theta_B\n";
    for (std::size_t i = 0; i < prof.grid.size(); ++i) {
        os << format_double17(prof.grid[i]) << ',' << format_double17(prof.theta_eff_plus[i])
           << ',' << format_double17(prof.theta_eff_minus[i]) << ','
           << format_double17(prof.theta_A[i]) << ',' << format_double17(prof.theta_B[i])
           << '\n';
    }
    if (!os) throw io_error("write failed for '" + path + "'");
}

/// Fixed column order shared by all energy sweeps. The abscissa column is d or
/// omega (surface sweeps carry both); energies in J, `normalized` is
/// delta_e / |delta_e(Omega=0, d=0)|.
inline void write_curve_csv(const std::string& path, const EnergyCurve& curve,
                            const Config& cfg) {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open '" + path + "' for writing");
    write_config_comments(os, cfg);
    switch (curve.kind) {
        case CurveKind::vs_distance:
            os << "# abscissa column: d (m)\n"
               << "d,delta_e_total,branch_plus,branch_minus,raman_cross,normalized\n";
            break;
        case CurveKind::vs_omega:
            os << "# abscissa column: omega (rad/s)\n"
               << "omega,delta_e_total,branch_plus,branch_minus,raman_cross,normalized\n";
            break;
        case CurveKind::surface:
            os << "# surface sweep: omega (rad/s), d (m)\n"
               << "omega,d,delta_e_total,branch_plus,branch_minus,raman_cross,normalized\n";
            break;
    }
    for (const auto& pt : curve.points) {
        os << format_double(pt.abscissa) << ',';
        if (curve.kind == CurveKind::surface) os << format_double(pt.abscissa2) << ',';
        os << format_double(pt.delta_e) << ',' << format_double(pt.branch_plus) << ','
           << format_double(pt.branch_minus) << ',' << format_double(pt.raman_cross) << ','
           << format_double(pt.normalized) << '\n';
    }
    if (!os) throw io_error("write failed for '" + path + "'");
}

}  // namespace polaron1d
