#pragma once

#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "polaron1d/constants.hpp"
#include "polaron1d/errors.hpp"
#include "polaron1d/params.hpp"

// Plain-text configs: one `key = value [unit]` per line, `#` comments, unknown
// keys rejected. Unit suffixes are normalized to SI here and nowhere else;
// Hz-denominated frequencies pick up their 2*pi exactly once, at this boundary.

namespace polaron1d {

struct Config {
    MixtureParams params;
    RamanDrive drive;
    /// Resolved key/value view (SI) for manifests and CSV header comments.
    std::vector<std::pair<std::string, std::string>> resolved() const;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// factor, plus whether the unit denotes a cyclic frequency (adds 2*pi)
struct UnitScale {
    double factor;
    bool cyclic = false;
};

inline const std::map<std::string, UnitScale>& unit_table() {
    static const std::map<std::string, UnitScale> table = {
        {"m", {1.0}},         {"mm", {1e-3}},      {"um", {1e-6}},     {"nm", {1e-9}},
        {"pm", {1e-12}},      {"m^-1", {1.0}},     {"1/m", {1.0}},     {"um^-1", {1e6}},
        {"1/um", {1e6}},      {"nm^-1", {1e9}},    {"Hz", {1.0, true}},
        {"kHz", {1e3, true}}, {"MHz", {1e6, true}}, {"rad/s", {1.0}},  {"J*m", {1.0}},
        {"J m", {1.0}},       {"kg", {1.0}},       {"u", {constants::atomic_mass_unit}},
    };
    return table;
}

inline double parse_value(const std::string& text, int line_no) {
    const std::string v = trim(text);
    std::size_t pos = 0;
    double x;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw config_error("cannot parse number in '" + v + "'", line_no);
    }
    std::string unit = trim(v.substr(pos));
    if (unit.empty()) return x;
    const auto& tab = unit_table();
    const auto it = tab.find(unit);
    if (it == tab.end()) throw config_error("unknown unit suffix '" + unit + "'", line_no);
    double out = x * it->second.factor;
    if (it->second.cyclic) out *= constants::two_pi;
    return out;
}

}  // namespace detail

/// Parse "value [unit]" with the same unit table config files use.
inline double parse_quantity(const std::string& text) { return detail::parse_value(text, 0); }

inline Config parse_config(std::istream& in) {
    Config cfg;
    cfg.params = reference_params();  // defaults; every field overridable
    cfg.drive = RamanDrive{0.0};

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string s = detail::trim(line);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw config_error("expected 'key = value'", line_no);
        const std::string key = detail::trim(s.substr(0, eq));
        const std::string val = detail::trim(s.substr(eq + 1));
        if (key.empty() || val.empty()) throw config_error("empty key or value", line_no);

        if (key == "density_convention") {
            if (val == "total")
                cfg.params.density_convention = DensityConvention::total;
            else if (val == "per_component")
                cfg.params.density_convention = DensityConvention::per_component;
            else
                throw config_error("density_convention must be 'total' or 'per_component'",
                                   line_no);
            continue;
        }

        double* slot = nullptr;
        if (key == "m_b") slot = &cfg.params.m_b;
        else if (key == "m_a") slot = &cfg.params.m_a;
        else if (key == "n0_A") slot = &cfg.params.n0_A;
        else if (key == "n0_B") slot = &cfg.params.n0_B;
        else if (key == "g_AA") slot = &cfg.params.g_AA;
        else if (key == "g_BB") slot = &cfg.params.g_BB;
        else if (key == "g_AB") slot = &cfg.params.g_AB;
        else if (key == "g_abA") slot = &cfg.params.g_abA;
        else if (key == "g_abB") slot = &cfg.params.g_abB;
        else if (key == "omega_perp") slot = &cfg.params.omega_perp;
        else if (key == "omega_long") slot = &cfg.params.omega_long;
        else if (key == "lattice_a") slot = &cfg.params.lattice_a;
        else if (key == "sigma") slot = &cfg.params.sigma;
        else if (key == "omega_rabi") slot = &cfg.drive.omega_rabi;
        else throw config_error("unknown key '" + key + "'", line_no);
        *slot = detail::parse_value(val, line_no);
    }
    cfg.params.validate();
    cfg.drive.validate();
    return cfg;
}

inline Config parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file '" + path + "'");
    try {
        return parse_config(in);
    } catch (config_error&) {
        throw;
    } catch (const validation_error& e) {
        throw config_error(std::string("invalid parameters: ") + e.what());
    }
}

inline std::vector<std::pair<std::string, std::string>> Config::resolved() const {
    auto num = [](double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        return os.str();
    };
    std::vector<std::pair<std::string, std::string>> kv = {
        {"m_b", num(params.m_b)},
        {"m_a", num(params.m_a)},
        {"n0_A", num(params.n0_A)},
        {"n0_B", num(params.n0_B)},
        {"g_AA", num(params.g_AA)},
        {"g_BB", num(params.g_BB)},
        {"g_AB", num(params.g_AB)},
        {"g_abA", num(params.g_abA)},
        {"g_abB", num(params.g_abB)},
        {"omega_perp", num(params.omega_perp)},
        {"omega_long", num(params.omega_long)},
        {"lattice_a", num(params.lattice_a)},
        {"sigma", num(params.sigma)},
        {"density_convention", params.density_convention == DensityConvention::total
                                   ? "total"
                                   : "per_component"},
        {"omega_rabi", num(drive.omega_rabi)},
    };
    return kv;
}

}  // namespace polaron1d
