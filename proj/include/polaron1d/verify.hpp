#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "polaron1d/constants.hpp"
#include "polaron1d/energy.hpp"
#include "polaron1d/modes.hpp"
#include "polaron1d/oracle/assembly.hpp"
#include "polaron1d/oracle/fd_solver.hpp"
#include "polaron1d/profiles.hpp"
#include "polaron1d/sweep.hpp"

// Oracle-vs-closed-form verification: every check compares an analytic path
// against the independent finite-difference / quadrature ground truth and
// reports the worst measured deviation next to its tolerance.

namespace polaron1d::verify {

struct CheckResult {
    std::string name;
    double tolerance = 0.0;
    double measured = 0.0;
    bool pass = false;
    bool warning_only = false;  // logged, never fails the run
    std::string details;
};

enum class Level { quick, full };

namespace detail {

inline std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// Deterministic uniform draws independent of libstdc++'s distribution
// implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform(double lo, double hi) {
        const double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

  private:
    std::mt19937_64 eng_;
};

inline double rel_dev(double a, double b, double floor_scale = 0.0) {
    const double denom = std::max({std::fabs(a), std::fabs(b), floor_scale});
    if (denom == 0.0) return 0.0;
    return std::fabs(a - b) / denom;
}

inline MixtureParams perturbed(const MixtureParams& ref, Rng& rng, double spread = 0.2) {
    MixtureParams p = ref;
    auto jiggle = [&](double v) { return v * (1.0 + rng.uniform(-spread, spread)); };
    const double n = jiggle(ref.n0_A);
    p.n0_A = p.n0_B = n;
    p.g_AA = jiggle(ref.g_AA);
    p.g_BB = jiggle(ref.g_BB);
    p.g_AB = jiggle(ref.g_AB);
    p.g_abA = jiggle(ref.g_abA);
    p.g_abB = jiggle(ref.g_abB);
    p.sigma = jiggle(ref.sigma);
    return p;
}

}  // namespace detail

/// Omega_lim/2pi within 2% of 923 Hz on the reference set.
inline CheckResult check_threshold_reference() {
    CheckResult r{"threshold: reference Omega_lim/2pi vs 923 Hz", 0.02, 0.0, false, false, ""};
    const auto p = reference_params();
    const double f = threshold_omega(p) / constants::two_pi;
    r.measured = std::fabs(f - 923.0) / 923.0;
    r.pass = r.measured <= r.tolerance;
    r.details = "Omega_lim/2pi = " + detail::fmt_g(f) + " Hz";
    return r;
}

/// Closed-form eta_+- against an independently coded eigendecomposition of the
/// coupling matrix over a log grid of drives.
inline CheckResult check_eigen_consistency(const MixtureParams& p, int n_points = 61) {
    CheckResult r{"modes: closed form vs numeric eigenvalues", 1e-10, 0.0, false, false, ""};
    const double om_lim = threshold_omega(p);
    double worst = 0.0;
    for (int i = 0; i < n_points; ++i) {
        const double t = static_cast<double>(i) / (n_points - 1);
        const double om = om_lim * std::pow(10.0, -3.0 + 6.0 * t);
        const RamanDrive dr{om};
        const auto cm = coupling_matrix(p, dr);
        // characteristic-polynomial route, algebraically distinct from mode_split
        const double tr = cm.trace(), det = cm.det();
        const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
        const double lam_p = 0.5 * (tr + disc);
        const double lam_m = det / lam_p;  // product identity avoids cancellation
        const auto m = effective_modes(p, dr);
        worst = std::max(worst, detail::rel_dev(std::sqrt(lam_p), m.eta_plus));
        worst = std::max(worst, detail::rel_dev(std::sqrt(lam_m), m.eta_minus));
    }
    r.measured = worst;
    r.pass = worst <= r.tolerance;
    return r;
}

/// eta(Omega -> 0) continuity against the zero-drive closed form.
inline CheckResult check_omega_zero_limit(const MixtureParams& p) {
    CheckResult r{"modes: Omega->0 reduction", 1e-5, 0.0, false, false, ""};
    const auto m0 = effective_modes(p, RamanDrive{0.0});
    const auto meps = effective_modes(p, RamanDrive{1e-6 * threshold_omega(p)});
    r.measured = std::max(detail::rel_dev(m0.eta_plus, meps.eta_plus),
                          detail::rel_dev(m0.eta_minus, meps.eta_minus));
    r.pass = r.measured <= r.tolerance;
    return r;
}

/// Strong-drive width limits: the minus-branch width saturates at the plateau
/// and the plus-branch width collapses like sqrt(hbar/(2 m_b Omega)).
inline CheckResult check_strong_coupling(const MixtureParams& p) {
    CheckResult r{"modes: strong-coupling asymptotics", 0.01, 0.0, false, false, ""};
    const double om = 1e3 * threshold_omega(p);
    const auto m = effective_modes(p, RamanDrive{om});
    const auto w = width_asymptotics(p);
    const double dev1 = detail::rel_dev(m.width_minus(), w.d_plus_limit);
    const double dev2 = detail::rel_dev(m.width_plus() * std::sqrt(om), w.d_minus_scale);
    r.measured = std::max(dev1, dev2);
    r.pass = r.measured <= r.tolerance;
    r.details = "plateau dev " + detail::fmt_g(dev1) + ", collapse dev " + detail::fmt_g(dev2);
    return r;
}

/// FD solution vs analytic back-transformed profiles at h = 0.01/eta_+, plus
/// the measured convergence order over h, h/2, h/4.
inline CheckResult check_fd_profiles(const MixtureParams& p, const std::vector<double>& omegas,
                                     double tol = 1e-4) {
    CheckResult r{"oracle: FD solution vs analytic profiles", tol, 0.0, false, false, ""};
    double worst = 0.0;
    double order_lo = 3.0, order_hi = 0.0;
    for (double om : omegas) {
        const RamanDrive dr{om};
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
        worst = std::max(worst, devs[0]);
        const double o1 = std::log2(devs[0] / devs[1]);
        const double o2 = std::log2(devs[1] / devs[2]);
        order_lo = std::min({order_lo, o1, o2});
        order_hi = std::max({order_hi, o1, o2});
    }
    r.measured = worst;
    r.pass = worst <= tol && order_lo >= 1.9 && order_hi <= 2.1;
    r.details = "convergence order in [" + detail::fmt_g(order_lo) + ", " +
                detail::fmt_g(order_hi) + "]";
    return r;
}

/// f_kernel against adaptive-quadrature convolution on random (x, eta) samples.
inline CheckResult check_kernel(const MixtureParams& p, int samples, double tol = 1e-8) {
    CheckResult r{"profiles: f_kernel vs quadrature convolution", tol, 0.0, false, false, ""};
    detail::Rng rng(0x5eedf00d1234abcdULL);
    const auto m0 = effective_modes(p, RamanDrive{0.0});
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double eta = m0.eta_minus * std::pow(10.0, rng.uniform(-1.0, 1.3));
        const double x = rng.uniform(0.0, 8.0 / eta);
        const auto rho = ImpurityDensity::single_site(0.0, p.sigma);
        const double closed = f_kernel(p.sigma, eta, x);
        const double quad = oracle::convolve_green(eta, rho, x);
        worst = std::max(worst, detail::rel_dev(closed, quad));
    }
    r.measured = worst;
    r.pass = worst <= tol;
    return r;
}

/// Closed-form Q against the nested-quadrature triple integral, plus the
/// degenerate-limit continuity across the equal-eta dispatch.
inline CheckResult check_q_integral(const MixtureParams& p, int draws, double tol = 1e-7,
                                    double tol_degenerate = 1e-6) {
    CheckResult r{"energy: Q closed form vs triple-integral quadrature", tol, 0.0, false, false,
                  ""};
    detail::Rng rng(0xc0ffee5517ULL);
    double worst = 0.0;
    for (int i = 0; i < draws; ++i) {
        const double sigma = p.sigma * rng.uniform(0.5, 1.5);
        const double eta_i = rng.uniform(1e6, 2e7);
        const double eta_j = rng.uniform(1e6, 2e7);
        const double d = rng.uniform(0.0, 6.0 * p.lattice_a);
        const double closed = q_integral(sigma, eta_i, eta_j, d);
        const double quad = oracle::q_quadrature(sigma, eta_i, eta_j, d);
        worst = std::max(worst, detail::rel_dev(closed, quad));
    }
    // branch agreement straddling the equal-eta dispatch (genuine variation
    // over the straddle is O(1e-8); any jump is branch disagreement)
    double worst_deg = 0.0;
    for (double d : {0.0, 0.5 * p.lattice_a, 2.0 * p.lattice_a}) {
        const double eta = 8e6;
        const double below = q_integral(p.sigma, eta, eta * (1.0 + 0.99 * q_degenerate_rel_split), d);
        const double above = q_integral(p.sigma, eta, eta * (1.0 + 1.01 * q_degenerate_rel_split), d);
        worst_deg = std::max(worst_deg, detail::rel_dev(below, above));
    }
    r.measured = std::max(worst, worst_deg);
    r.pass = worst <= tol && worst_deg <= tol_degenerate;
    r.details = "random-draw dev " + detail::fmt_g(worst) + ", degenerate-limit dev " +
                detail::fmt_g(worst_deg);
    return r;
}

/// Closed-form energies vs the oracle functional on randomized parameter sets.
/// Richardson-extrapolated FD energies (h, h/2) remove the O(h^2) solver bias.
inline CheckResult check_energy_assembly(const MixtureParams& ref, int draws, double tol = 1e-5) {
    CheckResult r{"energy: closed forms vs oracle assembly", tol, 0.0, false, false, ""};
    detail::Rng rng(0xa55e11b1ed0c1eaULL);
    double worst = 0.0;
    for (int i = 0; i < draws; ++i) {
        const auto p = detail::perturbed(ref, rng);
        const double om_lim = threshold_omega(p);
        const RamanDrive dr{(i % 2 == 0) ? 0.0 : rng.uniform(0.0, 2.0 * om_lim)};
        const double d = rng.uniform(0.0, 1.5 * p.lattice_a);
        const auto m = effective_modes(p, dr);

        auto oracle_energy = [&](const ImpurityDensity& rho) {
            const double h = 0.01 / m.eta_plus;
            const auto s1 = oracle::solve_fd(p, dr, rho, h, 16.0 / m.eta_minus);
            const auto s2 = oracle::solve_fd(p, dr, rho, 0.5 * h, 16.0 / m.eta_minus);
            const double e1 = oracle::energy_from_profiles(p, dr, rho, s1);
            const double e2 = oracle::energy_from_profiles(p, dr, rho, s2);
            return (4.0 * e2 - e1) / 3.0;
        };

        const auto single = single_impurity_energy(p, dr);
        const double e1_or = oracle_energy(ImpurityDensity::single_site(0.0, p.sigma));
        worst = std::max(worst, detail::rel_dev(single.total, e1_or));

        const auto pair = pair_energy(p, dr, d);
        const double e2_or = oracle_energy(ImpurityDensity::pair(d, p.sigma));
        const double de_or = e2_or - 2.0 * e1_or;
        worst = std::max(worst,
                         detail::rel_dev(pair.delta_e, de_or, 1e-6 * std::fabs(single.binding)));
    }
    r.measured = worst;
    r.pass = worst <= tol;
    return r;
}

/// Zero-drive interaction curve: minimum at contact, decayed below 1e-8 of the
/// contact value at d = 30/eta_minus.
inline CheckResult check_fig2_property(const MixtureParams& p) {
    CheckResult r{"energy: attractive contact minimum and far-field decay", 1e-8, 0.0, false,
                  false, ""};
    const RamanDrive off{0.0};
    const auto m = effective_modes(p, off);
    const double de0 = pair_energy(p, off, 0.0).delta_e;
    bool monotone_min = de0 < 0.0;
    double prev = de0;
    for (int i = 1; i <= 64; ++i) {
        const double d = (30.0 / m.eta_minus) * i / 64.0;
        const double v = pair_energy(p, off, d).delta_e;
        if (v < prev - std::fabs(de0) * 1e-12) monotone_min = false;  // must be non-decreasing
        prev = v;
    }
    const double tail = std::fabs(pair_energy(p, off, 30.0 / m.eta_minus).delta_e);
    r.measured = tail / std::fabs(de0);
    r.pass = monotone_min && r.measured <= r.tolerance;
    r.details = std::string("minimum at contact: ") + (monotone_min ? "yes" : "NO");
    return r;
}

/// Existence of a drive in [0, 2 Omega_lim] flipping the d-monotonicity sense
/// of delta_e over [a, 5a]. The consistent linearized model keeps both branch
/// prefactors non-positive at every drive, so no flip occurs; the check
/// reports the measured senses honestly. Reported as a warning here (it is a
/// model property, not a closed-form-vs-oracle tolerance); the acceptance
/// suite carries it as a hard criterion.
inline CheckResult check_crossover(const MixtureParams& p, bool warning_only = true) {
    CheckResult r{"energy: monotonicity-sense flip within [0, 2 Omega_lim]", 0.0, 0.0, false,
                  warning_only, ""};
    const double om_lim = threshold_omega(p);
    auto sense = [&](double om) {
        const RamanDrive dr{om};
        const double lo = pair_energy(p, dr, p.lattice_a).delta_e;
        const double hi = pair_energy(p, dr, 5.0 * p.lattice_a).delta_e;
        return (hi > lo) ? +1 : -1;
    };
    const int s0 = sense(0.0);
    double flip_at = -1.0;
    const int n = 81;
    int prev = s0;
    for (int i = 1; i < n; ++i) {
        const double om = 2.0 * om_lim * i / (n - 1);
        const int s = sense(om);
        if (s != prev) {
            flip_at = om;
            break;
        }
        prev = s;
    }
    if (flip_at >= 0.0) {
        r.measured = flip_at / om_lim;
        r.pass = flip_at >= 0.5 * om_lim && flip_at <= 2.0 * om_lim;
        r.details = "flip at Omega/Omega_lim = " + detail::fmt_g(flip_at / om_lim);
        return r;
    }
    r.pass = false;
    // Report the interaction's true character change: the tail of delta_e(d)
    // turns repulsive beyond a drive-dependent distance d*(Omega) (the
    // degenerate-branch overlap grows like d e^{-eta_minus d}); find the
    // closest approach of that boundary over the window.
    double dstar_min = -1.0, dstar_at = 0.0;
    for (int i = 1; i <= 40; ++i) {
        const double om = 2.0 * om_lim * i / 40.0;
        const RamanDrive dr{om};
        for (int j = 0; j <= 120; ++j) {
            const double d = p.lattice_a * (1.0 + 11.0 * j / 120.0);
            if (pair_energy(p, dr, d).delta_e > 0.0) {
                if (dstar_min < 0.0 || d < dstar_min) {
                    dstar_min = d;
                    dstar_at = om;
                }
                break;
            }
        }
    }
    r.details = "no flip over d in [a, 5a]; sense at both ends = " + std::to_string(s0);
    if (dstar_min > 0.0)
        r.details += "; repulsive tail exists beyond d = " + detail::fmt_g(dstar_min / p.lattice_a) +
                     " a (closest at Omega/Omega_lim = " + detail::fmt_g(dstar_at / om_lim) + ")";
    return r;
}

/// |raman_cross| / |delta_e| over the surface domain; logged as a warning when
/// it exceeds 0.1 rather than failing the run.
inline CheckResult check_cross_term(const MixtureParams& p) {
    CheckResult r{"energy: Raman cross-term share of delta_e", 0.1, 0.0, false, true, ""};
    const double om_lim = threshold_omega(p);
    const double floor = 1e-6 * std::fabs(pair_energy(p, RamanDrive{0.0}, 0.0).delta_e);
    double worst = 0.0;
    for (int i = 1; i <= 12; ++i) {
        const double om = 2.0 * om_lim * i / 12.0;
        for (int j = 0; j <= 12; ++j) {
            const double d = 5.0 * p.lattice_a * j / 12.0;
            const auto e = pair_energy(p, RamanDrive{om}, d);
            if (std::fabs(e.delta_e) > floor)
                worst = std::max(worst, std::fabs(e.raman_cross) / std::fabs(e.delta_e));
        }
    }
    r.measured = worst;
    r.pass = worst <= r.tolerance;
    return r;
}

/// Smoothness: no NaN/Inf anywhere on the surface domain.
inline CheckResult check_smoothness(const MixtureParams& p) {
    CheckResult r{"energy: finite on the full surface domain", 0.0, 0.0, false, false, ""};
    const double om_lim = threshold_omega(p);
    bool ok = true;
    for (int i = 0; i <= 24 && ok; ++i)
        for (int j = 0; j <= 24 && ok; ++j) {
            const auto e =
                pair_energy(p, RamanDrive{2.0 * om_lim * i / 24.0}, 5.0 * p.lattice_a * j / 24.0);
            ok = std::isfinite(e.delta_e) && std::isfinite(e.raman_cross);
        }
    r.pass = ok;
    return r;
}

inline std::vector<CheckResult> run_verification(const MixtureParams& p, Level level) {
    std::vector<CheckResult> out;
    const bool full = level == Level::full;
    const double om_lim = threshold_omega(p);
    out.push_back(check_threshold_reference());
    out.push_back(check_eigen_consistency(p, full ? 121 : 31));
    out.push_back(check_omega_zero_limit(p));
    out.push_back(check_strong_coupling(p));
    out.push_back(check_kernel(p, full ? 100 : 20));
    out.push_back(check_q_integral(p, full ? 50 : 8));
    out.push_back(check_fd_profiles(
        p, full ? std::vector<double>{0.0, 0.5 * om_lim, om_lim, 2.0 * om_lim}
                : std::vector<double>{0.0, om_lim}));
    out.push_back(check_energy_assembly(p, full ? 20 : 4));
    out.push_back(check_fig2_property(p));
    out.push_back(check_crossover(p));
    out.push_back(check_cross_term(p));
    out.push_back(check_smoothness(p));
    return out;
}

}  // namespace polaron1d::verify
