// polaron1d command-line front end: single evaluations, figure-style sweeps,
// and the oracle verification suite. Exit codes: 0 success, 1 verification
// failure, 2 config parse error, 3 physics/domain error, 4 I/O error.

#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "polaron1d/config.hpp"
#include "polaron1d/energy.hpp"
#include "polaron1d/io.hpp"
#include "polaron1d/modes.hpp"
#include "polaron1d/profiles.hpp"
#include "polaron1d/sweep.hpp"
#include "polaron1d/verify.hpp"

namespace {

using namespace polaron1d;

constexpr int exit_ok = 0;
constexpr int exit_verify_failed = 1;
constexpr int exit_config_error = 2;
constexpr int exit_domain_error = 3;
constexpr int exit_io_error = 4;

Config load_config(const std::string& path) {
    if (path.empty()) {
        Config cfg;
        cfg.params = reference_params();
        cfg.drive = RamanDrive{0.0};
        return cfg;
    }
    return parse_config_file(path);
}

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.erase(0, 1);
        while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.pop_back();
        parts.push_back(tok);
    }
    if (parts.size() < 3 || parts.size() > 4)
        throw config_error("--grid expects min,max,count[,log]");
    g.min = parse_quantity(parts[0]);
    g.max = parse_quantity(parts[1]);
    g.count = static_cast<std::size_t>(std::stoul(parts[2]));
    if (parts.size() == 4) {
        if (parts[3] != "log" && parts[3] != "lin")
            throw config_error("--grid fourth field must be 'log' or 'lin'");
        g.log = parts[3] == "log";
    }
    g.validate();
    return g;
}

void write_manifest(const std::string& out_path, const Config& cfg, const std::string& command,
                    const std::vector<std::string>& outputs) {
    nlohmann::json j;
    j["tool"] = "polaron1d";
    j["command"] = command;
    nlohmann::json cfgj;
    for (const auto& [k, v] : cfg.resolved()) cfgj[k] = v;
    j["config"] = cfgj;
    j["outputs"] = outputs;
    const std::string path = out_path + ".manifest.json";
    std::ofstream os(path);
    if (!os) throw io_error("cannot write manifest '" + path + "'");
    os << j.dump(2) << "\n";
}

void print_report_line(const verify::CheckResult& c) {
    const char* tag = c.pass ? "PASS" : (c.warning_only ? "WARN" : "FAIL");
    std::printf("[%s] %-55s tol=%-9.3g measured=%-12.6g %s\n", tag, c.name.c_str(), c.tolerance,
                c.measured, c.details.c_str());
}

int cmd_modes(const Config& cfg) {
    const auto& p = cfg.params;
    for (const auto& w : p.warnings()) std::fprintf(stderr, "warning: %s\n", w.c_str());
    const auto m = effective_modes(p, cfg.drive);
    const double om_lim = threshold_omega(p);
    const auto wa = width_asymptotics(p);
    std::printf("eta_plus        = %.12g 1/m\n", m.eta_plus);
    std::printf("eta_minus       = %.12g 1/m\n", m.eta_minus);
    std::printf("width d_plus    = %.12g m\n", m.width_plus());
    std::printf("width d_minus   = %.12g m\n", m.width_minus());
    std::printf("K_plus          = %.12g m^-3/2\n", m.k_plus);
    std::printf("K_minus         = %.12g m^-3/2\n", m.k_minus);
    std::printf("mix k_plus      = %.12g\n", m.mix_kplus);
    std::printf("mix k_minus     = %.12g\n", m.mix_kminus);
    std::printf("Omega_lim       = %.12g rad/s\n", om_lim);
    std::printf("Omega_lim/2pi   = %.12g Hz\n", om_lim / constants::two_pi);
    std::printf("mu_A            = %.12g J\n", chemical_potential(p, cfg.drive, Component::A));
    std::printf("mu_B            = %.12g J\n", chemical_potential(p, cfg.drive, Component::B));
    std::printf("width plateau   = %.12g m\n", wa.d_plus_limit);
    std::printf("collapse scale  = %.12g m sqrt(rad/s)\n", wa.d_minus_scale);
    return exit_ok;
}

int cmd_profile(const Config& cfg, const std::string& out, std::optional<double> distance,
                std::optional<GridSpec> grid) {
    const auto& p = cfg.params;
    const auto rho = distance ? ImpurityDensity::pair(*distance, p.sigma)
                              : ImpurityDensity::single_site(0.0, p.sigma);
    std::vector<double> xs;
    if (grid) {
        xs = grid->values();
    } else {
        xs = make_default_grid(p, cfg.drive, rho);
    }
    const auto prof = effective_deformations(p, cfg.drive, rho, std::move(xs));
    write_profile_csv(out, prof, cfg);
    write_manifest(out, cfg, "profile", {out});
    std::printf("wrote %s (%zu points)\n", out.c_str(), prof.grid.size());
    return exit_ok;
}

int cmd_energy_single(const Config& cfg) {
    const auto e = single_impurity_energy(cfg.params, cfg.drive);
    std::printf("A0           = %.12g J\n", e.a0);
    std::printf("total        = %.12g J\n", e.total);
    std::printf("binding      = %.12g J\n", e.binding);
    std::printf("branch_plus  = %.12g J\n", e.branch_plus);
    std::printf("branch_minus = %.12g J\n", e.branch_minus);
    std::printf("raman_cross  = %.12g J\n", e.raman_cross);
    return exit_ok;
}

int cmd_energy_pair(const Config& cfg, double d, bool normalize) {
    const auto e = pair_energy(cfg.params, cfg.drive, d);
    std::printf("delta_e      = %.12g J\n", e.delta_e);
    std::printf("branch_plus  = %.12g J\n", e.branch_plus);
    std::printf("branch_minus = %.12g J\n", e.branch_minus);
    std::printf("raman_cross  = %.12g J\n", e.raman_cross);
    if (normalize) {
        const double anchor = normalization_anchor(cfg.params);
        std::printf("normalized   = %.12g\n", e.delta_e / anchor);
    }
    return exit_ok;
}

void write_modes_sweep_csv(const std::string& path, const std::vector<ModeSweepPoint>& pts,
                           const Config& cfg) {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open '" + path + "' for writing");
    write_config_comments(os, cfg);
    os << "# widths/depths normalized to their Omega=0 values; single_* in J\n";
    os << "omega,omega_over_limit,eta_plus,eta_minus,width_plus,width_minus,"
          "width_plus_norm,width_minus_norm,depth_plus_norm,depth_minus_norm,"
          "single_total,single_binding,single_total_norm\n";
    for (const auto& q : pts) {
        os << format_double(q.omega) << ',' << format_double(q.omega_over_limit) << ','
           << format_double(q.eta_plus) << ',' << format_double(q.eta_minus) << ','
           << format_double(q.width_plus) << ',' << format_double(q.width_minus) << ','
           << format_double(q.width_plus_norm) << ',' << format_double(q.width_minus_norm) << ','
           << format_double(q.depth_plus_norm) << ',' << format_double(q.depth_minus_norm) << ','
           << format_double(q.single_total) << ',' << format_double(q.single_binding) << ','
           << format_double(q.single_total_norm) << '\n';
    }
    if (!os) throw io_error("write failed for '" + path + "'");
}

int cmd_sweep(const Config& cfg, const std::string& variable, const GridSpec& grid,
              std::optional<GridSpec> ogrid, std::optional<double> distance,
              const std::string& out, unsigned threads) {
    if (variable == "distance") {
        const auto curve = sweep_distance(cfg.params, cfg.drive, grid, threads);
        write_curve_csv(out, curve, cfg);
    } else if (variable == "omega") {
        if (distance) {
            const auto curve = sweep_omega_pair(cfg.params, grid, *distance, threads);
            write_curve_csv(out, curve, cfg);
        } else {
            const auto pts = sweep_omega_modes(cfg.params, grid, threads);
            write_modes_sweep_csv(out, pts, cfg);
        }
    } else if (variable == "both") {
        if (!ogrid) throw config_error("--variable both requires --ogrid for the omega axis");
        const auto curve = sweep_surface(cfg.params, *ogrid, grid, threads);
        write_curve_csv(out, curve, cfg);
    } else {
        throw config_error("--variable must be distance, omega, or both");
    }
    write_manifest(out, cfg, "sweep " + variable, {out});
    std::printf("wrote %s\n", out.c_str());
    return exit_ok;
}

int cmd_verify(const Config& cfg, const std::string& level_name) {
    const auto level = level_name == "full" ? verify::Level::full : verify::Level::quick;
    for (const auto& w : cfg.params.warnings())
        std::printf("[WARN] config: %s\n", w.c_str());
    const auto t0 = std::chrono::steady_clock::now();
    const auto results = verify::run_verification(cfg.params, level);
    bool ok = true;
    for (const auto& c : results) {
        print_report_line(c);
        if (!c.pass && !c.warning_only) ok = false;
    }
    const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s (%zu checks, %.1f s)\n", ok ? "verification PASSED" : "verification FAILED",
                results.size(), dt);
    return ok ? exit_ok : exit_verify_failed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deformation profiles and polaron interaction energies for static impurities "
                 "in a Raman-coupled two-component 1D condensate"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_path, omega_text, distance_text, grid_text, ogrid_text;
    std::string variable = "distance", level = "quick";
    bool normalize = false;
    unsigned threads = std::min(4u, std::max(1u, std::thread::hardware_concurrency()));

    app.add_option("--config", config_path, "config file (key = value lines)");

    auto* sc_modes = app.add_subcommand("modes", "effective modes, threshold, chemical potentials");
    auto* sc_profile = app.add_subcommand("profile", "deformation profile CSV");
    auto* sc_esingle = app.add_subcommand("energy-single", "single-impurity ground-state energy");
    auto* sc_epair = app.add_subcommand("energy-pair", "two-impurity interaction energy");
    auto* sc_sweep = app.add_subcommand("sweep", "parameter sweeps to CSV");
    auto* sc_verify = app.add_subcommand("verify", "oracle-vs-closed-form verification suite");

    for (auto* sc : {sc_modes, sc_profile, sc_esingle, sc_epair, sc_sweep, sc_verify})
        sc->add_option("--omega", omega_text, "Raman coupling (e.g. '5786', '921 Hz')");
    for (auto* sc : {sc_profile, sc_epair, sc_sweep})
        sc->add_option("--distance", distance_text, "impurity separation (e.g. '532 nm')");
    for (auto* sc : {sc_profile, sc_sweep}) {
        sc->add_option("--out", out_path, "output CSV path")->required();
        sc->add_option("--grid", grid_text, "min,max,count[,log]");
    }
    sc_epair->add_flag("--normalize", normalize, "also print delta_e / |delta_e(0,0)|");
    sc_sweep->add_flag("--normalize", normalize,
                       "kept for interface stability; normalized column is always emitted");
    sc_sweep->add_option("--variable", variable, "distance | omega | both");
    sc_sweep->add_option("--ogrid", ogrid_text, "omega axis for --variable both");
    sc_sweep->add_option("--threads", threads, "worker threads for sweep points");
    sc_verify->add_option("--level", level, "quick | full");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_config_error;
    }

    try {
        Config cfg = load_config(config_path);
        if (!omega_text.empty()) cfg.drive.omega_rabi = parse_quantity(omega_text);
        cfg.drive.validate();
        std::optional<double> distance;
        if (!distance_text.empty()) distance = parse_quantity(distance_text);
        std::optional<GridSpec> grid, ogrid;
        if (!grid_text.empty()) grid = parse_grid(grid_text);
        if (!ogrid_text.empty()) ogrid = parse_grid(ogrid_text);

        if (sc_modes->parsed()) return cmd_modes(cfg);
        if (sc_profile->parsed()) return cmd_profile(cfg, out_path, distance, grid);
        if (sc_esingle->parsed()) return cmd_energy_single(cfg);
        if (sc_epair->parsed()) {
            if (!distance) throw config_error("energy-pair requires --distance");
            return cmd_energy_pair(cfg, *distance, normalize);
        }
        if (sc_sweep->parsed()) {
            if (!grid) throw config_error("sweep requires --grid");
            return cmd_sweep(cfg, variable, *grid, ogrid, distance, out_path, threads);
        }
        if (sc_verify->parsed()) return cmd_verify(cfg, level);
        return exit_config_error;
    } catch (const config_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_config_error;
    } catch (const io_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_io_error;
    } catch (const polaron1d::error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_domain_error;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return exit_domain_error;
    }
}
