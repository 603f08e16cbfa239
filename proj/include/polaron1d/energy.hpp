#pragma once

#include <cmath>
#include <vector>

#include "polaron1d/modes.hpp"
#include "polaron1d/profiles.hpp"
#include "polaron1d/specfun.hpp"

// Ground-state energy closed forms. The energy functional is the constant
// impurity-condensate term A0 per impurity, the impurity-deformation coupling
// sum_i g_i^(ab) sqrt(n0_i) int rho theta_i, and the drive's direct
// deformation-deformation coupling -hbar Omega int theta_A theta_B, all
// evaluated on the stationary profiles. Everything here reduces to the kernel
// family F / Q / R; no quadrature on the production path.

namespace polaron1d {

// Relative eta split below which the Q integral switches to its equal-eta
// closed form evaluated at the midpoint (difference-quotient roundoff wins
// above this, the O(delta^2) midpoint error below it).
inline constexpr double q_degenerate_rel_split = 1e-6;

namespace detail {

// Pair kernel G^eta(d) = iint G(x-x',eta) g_sig(x) g_sig(x'-d) dx dx'
//                      = F_{sqrt(2) sigma, eta}(d).
inline double pair_kernel(double sigma, double eta, double d) {
    return f_kernel(std::sqrt(2.0) * sigma, eta, d);
}

// Equal-eta overlap R_{sigma,eta}(d) = int F_{sigma,eta}(x) F_{sigma,eta}(x-d) dx,
// regrouped so every erfc product goes through exp_erfc with a-b^2 = -d^2/2sigma^2.
inline double q_equal_eta(double sigma, double eta, double d) {
    const double s2 = sigma * sigma;
    const double up = (d + s2 * eta) / (std::sqrt(2.0) * sigma);
    const double um = (d - s2 * eta) / (std::sqrt(2.0) * sigma);
    const double a_minus = 0.5 * s2 * eta * eta - eta * d;
    const double a_plus = 0.5 * s2 * eta * eta + eta * d;
    const double em = -(exp_erfc(a_minus, -um) + exp_erfc(a_plus, up));
    const double gauss =
        2.0 * std::sqrt(2.0 / constants::pi) * sigma * eta * std::exp(-d * d / (2.0 * s2));
    const double v = (em * (eta * (s2 * eta - d) - 1.0) + gauss -
                      2.0 * d * eta * exp_erfc(a_plus, up)) /
                     (8.0 * eta * eta * eta);
    return v;
}

}  // namespace detail

/// Overlap of two single-impurity deformation clouds at separation d:
/// Q_{sigma,eta_i,eta_j}(d) = int F_{sigma,eta_i}(x) F_{sigma,eta_j}(x-d) dx  (m^3).
/// Swap-symmetric in (eta_i, eta_j); even in d.
inline double q_integral(double sigma, double eta_i, double eta_j, double d) {
    if (!(sigma > 0.0) || !(eta_i > 0.0) || !(eta_j > 0.0) || !(d >= 0.0))
        throw validation_error("q_integral: need sigma, eta > 0 and d >= 0");
    const double emax = std::max(eta_i, eta_j);
    double v;
    if (std::fabs(eta_i - eta_j) <= q_degenerate_rel_split * emax) {
        v = detail::q_equal_eta(sigma, 0.5 * (eta_i + eta_j), d);
    } else {
        // Partial fractions of the double pole: (F_i - F_j)/(eta_j^2 - eta_i^2)
        // at the combined gaussian width sqrt(2) sigma.
        const double fi = detail::pair_kernel(sigma, eta_i, d);
        const double fj = detail::pair_kernel(sigma, eta_j, d);
        v = (fi - fj) / ((eta_j - eta_i) * (eta_j + eta_i));
    }
    static const bool mutate = detail::mutation_hook("q_integral");
    if (mutate) v *= 1.0 + 1e-4;
    return v;
}

/// Closed-form coefficients of the lattice energy at zero drive.
/// b_plus/b_minus are the branch prefactors (J/m) multiplying the pair kernel;
/// both are <= 0 (each is minus a squared source projection). l_plus/l_minus
/// (m^-1/2) and the mixing constants satisfy b_i = sqrt(n0) (k_i g_abA + g_abB) l_i.
struct EnergyCoefficients {
    double a0 = 0.0;      // J per impurity
    double b_plus = 0.0;  // J/m
    double b_minus = 0.0;
    double l_plus = 0.0;  // m^-1/2
    double l_minus = 0.0;
    double mix_kplus = 0.0;
    double mix_kminus = 0.0;
};

inline EnergyCoefficients coefficients(const MixtureParams& p) {
    p.validate();
    if (!p.equal_densities()) throw unequal_densities();
    const RamanDrive off{0.0};
    const auto m = effective_modes(p, off);
    const double nc = p.n0_A;
    const double c = 2.0 * p.m_b / (constants::hbar * constants::hbar);

    EnergyCoefficients k;
    k.a0 = nc * (p.g_abA + p.g_abB);
    const double up = m.transform[0][0] * p.g_abA + m.transform[1][0] * p.g_abB;
    const double um = m.transform[0][1] * p.g_abA + m.transform[1][1] * p.g_abB;
    k.b_plus = -c * nc * up * up;
    k.b_minus = -c * nc * um * um;
    k.mix_kplus = m.mix_kplus;
    k.mix_kminus = m.mix_kminus;
    // Amplitude factors defined through b_i = sqrt(n0) (k_i g_A + g_B) l_i.
    const double sq = std::sqrt(nc);
    k.l_plus = k.b_plus / (sq * (k.mix_kplus * p.g_abA + p.g_abB));
    k.l_minus = k.b_minus / (sq * (k.mix_kminus * p.g_abA + p.g_abB));
    return k;
}

namespace detail {

// Everything the closed-form energy of an impurity configuration needs:
// drive-dependent branch prefactors and the three Raman overlap weights.
struct EnergyAssembly {
    EffectiveModes modes;
    double a0;          // J per impurity
    double b_plus;      // J/m
    double b_minus;     // J/m
    double c_pp, c_mm, c_pm;  // J/m^3 weights of Q_{++}, Q_{--}, Q_{+-}
    double sigma;
};

inline EnergyAssembly make_assembly(const MixtureParams& p, const RamanDrive& drive) {
    p.validate();
    drive.validate();
    if (!p.equal_densities()) throw unequal_densities();
    EnergyAssembly a;
    a.modes = effective_modes(p, drive);
    a.sigma = p.sigma;
    const double nc = p.n0_A;
    const double c = 2.0 * p.m_b / (constants::hbar * constants::hbar);
    a.a0 = nc * (p.g_abA + p.g_abB);
    const auto& S = a.modes.transform;
    const double up = S[0][0] * p.g_abA + S[1][0] * p.g_abB;
    const double um = S[0][1] * p.g_abA + S[1][1] * p.g_abB;
    a.b_plus = -c * nc * up * up;
    a.b_minus = -c * nc * um * um;
    // -hbar Omega int theta_A theta_B expanded over mode pairs.
    const double hw = constants::hbar * drive.omega_rabi;
    const double kp = a.modes.k_plus, km = a.modes.k_minus;
    a.c_pp = -hw * S[0][0] * S[1][0] * kp * kp;
    a.c_mm = -hw * S[0][1] * S[1][1] * km * km;
    a.c_pm = -hw * (S[0][0] * S[1][1] + S[0][1] * S[1][0]) * kp * km;
    return a;
}

}  // namespace detail

struct SingleImpurityEnergy {
    double total = 0.0;         // J
    double binding = 0.0;       // total - a0
    double a0 = 0.0;
    double branch_plus = 0.0;   // per-branch deformation terms
    double branch_minus = 0.0;
    double raman_cross = 0.0;   // -hbar Omega int theta_A theta_B
};

inline SingleImpurityEnergy single_impurity_energy(const MixtureParams& p,
                                                   const RamanDrive& drive) {
    const auto a = detail::make_assembly(p, drive);
    const auto& m = a.modes;
    SingleImpurityEnergy e;
    e.a0 = a.a0;
    e.branch_plus = a.b_plus * detail::pair_kernel(a.sigma, m.eta_plus, 0.0);
    e.branch_minus = a.b_minus * detail::pair_kernel(a.sigma, m.eta_minus, 0.0);
    e.raman_cross = a.c_pp * q_integral(a.sigma, m.eta_plus, m.eta_plus, 0.0) +
                    a.c_mm * q_integral(a.sigma, m.eta_minus, m.eta_minus, 0.0) +
                    a.c_pm * q_integral(a.sigma, m.eta_plus, m.eta_minus, 0.0);
    e.binding = e.branch_plus + e.branch_minus + e.raman_cross;
    e.total = e.a0 + e.binding;
    return e;
}

struct PairEnergy {
    double delta_e = 0.0;       // E(d) - 2 E_single (J)
    double branch_plus = 0.0;
    double branch_minus = 0.0;
    double raman_cross = 0.0;
};

/// Interaction energy of two unit-occupation impurities a distance d apart,
/// relative to infinite separation. Attractive configurations have
/// delta_e(0) < 0 with the minimum at contact.
inline PairEnergy pair_energy(const MixtureParams& p, const RamanDrive& drive, double d) {
    if (!(d >= 0.0)) throw validation_error("pair_energy: d must be >= 0");
    const auto a = detail::make_assembly(p, drive);
    const auto& m = a.modes;
    PairEnergy e;
    e.branch_plus = 2.0 * a.b_plus * detail::pair_kernel(a.sigma, m.eta_plus, d);
    e.branch_minus = 2.0 * a.b_minus * detail::pair_kernel(a.sigma, m.eta_minus, d);
    e.raman_cross = 2.0 * (a.c_pp * q_integral(a.sigma, m.eta_plus, m.eta_plus, d) +
                           a.c_mm * q_integral(a.sigma, m.eta_minus, m.eta_minus, d) +
                           a.c_pm * q_integral(a.sigma, m.eta_plus, m.eta_minus, d));
    e.delta_e = e.branch_plus + e.branch_minus + e.raman_cross;
    return e;
}

struct LatticeEnergy {
    double total = 0.0;            // J
    std::size_t n_sites = 0;
    std::vector<double> pairwise;  // row-major n_sites x n_sites, J; total =
                                   // a0 * sum(n_m) + sum of all entries
};

/// General lattice configuration: double site sum over the same closed-form
/// kernels. Two unit sites reproduce 2 * single + pair exactly.
inline LatticeEnergy lattice_energy(const MixtureParams& p, const RamanDrive& drive,
                                    const ImpurityDensity& rho) {
    rho.validate();
    if (std::fabs(rho.sigma - p.sigma) > 1e-12 * p.sigma)
        throw validation_error("lattice_energy: rho.sigma must match params.sigma");
    const auto a = detail::make_assembly(p, drive);
    const auto& m = a.modes;
    LatticeEnergy e;
    e.n_sites = rho.centers.size();
    e.pairwise.assign(e.n_sites * e.n_sites, 0.0);
    double total = a.a0 * rho.total_occupation();
    for (std::size_t i = 0; i < e.n_sites; ++i) {
        for (std::size_t j = 0; j < e.n_sites; ++j) {
            const double d = std::fabs(rho.centers[i] - rho.centers[j]);
            const double w = rho.occupations[i] * rho.occupations[j];
            if (w == 0.0) continue;
            double v = a.b_plus * detail::pair_kernel(a.sigma, m.eta_plus, d) +
                       a.b_minus * detail::pair_kernel(a.sigma, m.eta_minus, d) +
                       a.c_pp * q_integral(a.sigma, m.eta_plus, m.eta_plus, d) +
                       a.c_mm * q_integral(a.sigma, m.eta_minus, m.eta_minus, d) +
                       a.c_pm * q_integral(a.sigma, m.eta_plus, m.eta_minus, d);
            v *= w;
            e.pairwise[i * e.n_sites + j] = v;
            total += v;
        }
    }
    e.total = total;
    return e;
}

/// Drive strength at which the sign of d(delta_e)/dd at d_probe flips,
/// located by bisection over [0, 10 Omega_lim]. Throws no_sign_change when the
/// slope keeps one sign over the whole bracket (the behavior of the consistent
/// linearized model on repulsive-contact mixtures; see README).
inline double crossover_omega(const MixtureParams& p, double d_probe) {
    p.validate();
    if (!(d_probe > 0.0) || d_probe > 5.0 * p.lattice_a)
        throw validation_error("crossover_omega: d_probe must be in (0, 5 a]");
    const double om_max = 10.0 * threshold_omega(p);
    const auto m0 = effective_modes(p, RamanDrive{0.0});
    const double h = 1e-4 / m0.eta_plus;
    auto slope = [&](double om) {
        const RamanDrive dr{om};
        return (pair_energy(p, dr, d_probe + h).delta_e -
                pair_energy(p, dr, d_probe - h).delta_e) /
               (2.0 * h);
    };
    const int scan = 64;
    double prev_om = 0.0;
    double prev_s = slope(0.0);
    double lo = -1.0, hi = -1.0;
    for (int i = 1; i <= scan; ++i) {
        const double om = om_max * static_cast<double>(i) / scan;
        const double s = slope(om);
        // a bracket needs two nonzero slopes of opposite sign; identically
        // zero interactions (no impurity coupling) never bracket
        if (s != 0.0 && prev_s != 0.0 && std::signbit(s) != std::signbit(prev_s)) {
            lo = prev_om;
            hi = om;
            break;
        }
        if (s != 0.0) {
            prev_om = om;
            prev_s = s;
        }
    }
    if (lo < 0.0)
        throw no_sign_change("d(delta_e)/dd keeps one sign over [0, 10 Omega_lim] at d_probe = " +
                             std::to_string(d_probe));
    double slo = slope(lo);
    for (int it = 0; it < 80 && (hi - lo) > 1e-12 * om_max; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double sm = slope(mid);
        if (sm == 0.0) return mid;
        if (std::signbit(sm) == std::signbit(slo)) {
            lo = mid;
            slo = sm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// One row of an exported energy sweep.
struct EnergyCurvePoint {
    double abscissa = 0.0;     // d (m) or Omega (rad/s)
    double abscissa2 = 0.0;    // second variable for surface sweeps
    double delta_e = 0.0;      // J
    double branch_plus = 0.0;  // J
    double branch_minus = 0.0;
    double raman_cross = 0.0;
    double normalized = 0.0;   // delta_e / |delta_e(Omega=0, d=0)|
};

enum class CurveKind { vs_distance, vs_omega, surface };

struct EnergyCurve {
    CurveKind kind = CurveKind::vs_distance;
    std::vector<EnergyCurvePoint> points;
};

}  // namespace polaron1d
