#pragma once

#include <cmath>

#include "polaron1d/coupling.hpp"
#include "polaron1d/errors.hpp"
#include "polaron1d/params.hpp"

// Normal-mode decomposition of the deformation system. Requires equal
// component densities (the closed-form regime); general densities go through
// the finite-difference solver instead.

namespace polaron1d {

enum class Component { A, B };

/// Diagonalized representation of the coupling matrix.
///
/// Branch convention: "+" is the larger eigenvalue, eta_plus >= eta_minus.
/// transform[row][col] holds the unit-norm eigenvectors as columns (rows are
/// the A,B components, columns the +,- branches), sign-fixed so the first
/// nonzero entry of each column is positive. k_plus/k_minus are the amplitudes
/// K_i of theta'_i(x) = K_i sum_m n_m F_{sigma,eta_i}(x - x_m); they solve the
/// deformation system exactly (the Green function carries a minus sign the
/// amplitudes absorb). mix_k* generalize the dimensionless mixing constants
/// (g_AA - g_BB +- beta0)/g_AB to nonzero drive; they diverge where the
/// off-diagonal matrix entry crosses zero (hbar*Omega = 4 g_AB n0).
struct EffectiveModes {
    double eta_plus = 0.0;   // 1/m
    double eta_minus = 0.0;  // 1/m
    double k_plus = 0.0;     // m^-3/2
    double k_minus = 0.0;    // m^-3/2
    double mix_kplus = 0.0;
    double mix_kminus = 0.0;
    double transform[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    bool degenerate = false;

    double width_plus() const { return 1.0 / eta_plus; }
    double width_minus() const { return 1.0 / eta_minus; }
};

namespace detail {

// Internal symmetric 2x2 spectral data for the equal-density matrix,
// parameterized as M/c = [[ht + dd, b], [b, ht - dd]].
struct ModeSplit {
    double c;         // 2 m_b / hbar^2
    double ht;        // half trace / c
    double dd;        // half difference / c
    double b;         // off-diagonal / c
    double bprime;    // sqrt(dd^2 + b^2)
    double lam_plus;  // c (ht + bprime)
    double lam_minus; // c (ht - bprime)
};

inline ModeSplit mode_split(const MixtureParams& p, const RamanDrive& drive) {
    const double c = 2.0 * p.m_b / (constants::hbar * constants::hbar);
    const double w = 0.5 * constants::hbar * drive.omega_rabi;
    const double nc = p.n0_A;  // == n0_B in the closed-form regime
    ModeSplit s;
    s.c = c;
    s.ht = 2.0 * (p.g_AA + p.g_BB) * nc + w;
    s.dd = 2.0 * (p.g_AA - p.g_BB) * nc;
    s.b = 2.0 * p.g_AB * nc - w;
    s.bprime = std::hypot(s.dd, s.b);
    s.lam_plus = c * (s.ht + s.bprime);
    s.lam_minus = c * (s.ht - s.bprime);
    return s;
}

}  // namespace detail

inline EffectiveModes effective_modes(const MixtureParams& p, const RamanDrive& drive) {
    p.validate();
    drive.validate();
    if (!p.equal_densities()) throw unequal_densities();

    const auto s = detail::mode_split(p, drive);
    if (!(s.lam_minus > 0.0))
        throw dynamical_instability("smallest eigenvalue of the coupling matrix is " +
                                    std::to_string(s.lam_minus) + " 1/m^2");

    EffectiveModes m;
    m.eta_plus = std::sqrt(s.lam_plus);
    m.eta_minus = std::sqrt(s.lam_minus);
    m.degenerate = (s.bprime <= 1e-14 * s.ht);

    // Eigenvectors: v+ = (dd + bprime, b), v- = (-b, dd + bprime), unit norm,
    // first nonzero entry positive. Degenerate or p == 0 edge cases pinned to
    // the coordinate axes for determinism.
    double vp[2], vm[2];
    const double pp = s.dd + s.bprime;
    const double norm = std::hypot(pp, s.b);
    if (m.degenerate || norm <= 1e-300) {
        vp[0] = (s.dd >= 0.0) ? 1.0 : 0.0;
        vp[1] = (s.dd >= 0.0) ? 0.0 : 1.0;
        vm[0] = vp[1];
        vm[1] = vp[0];
    } else {
        vp[0] = pp / norm;
        vp[1] = s.b / norm;
        vm[0] = -s.b / norm;
        vm[1] = pp / norm;
    }
    auto fix_sign = [](double v[2]) {
        if (v[0] < 0.0 || (v[0] == 0.0 && v[1] < 0.0)) {
            v[0] = -v[0];
            v[1] = -v[1];
        }
    };
    fix_sign(vp);
    fix_sign(vm);
    m.transform[0][0] = vp[0];
    m.transform[1][0] = vp[1];
    m.transform[0][1] = vm[0];
    m.transform[1][1] = vm[1];

    // K_i = -(v_i . gamma): the mode-basis source projections, sign-flipped by
    // the Green function of (d^2/dx^2 - eta^2).
    const double nc = p.n0_A;
    const double gamma_A = s.c * p.g_abA * std::sqrt(nc);
    const double gamma_B = s.c * p.g_abB * std::sqrt(nc);
    m.k_plus = -(vp[0] * gamma_A + vp[1] * gamma_B);
    m.k_minus = -(vm[0] * gamma_A + vm[1] * gamma_B);

    m.mix_kplus = (s.dd + s.bprime) / s.b;   // +-inf when b == 0
    m.mix_kminus = (s.dd - s.bprime) / s.b;
    return m;
}

/// Threshold drive strength: hbar Omega_lim / 2 = n [(g_AA-g_BB)^2 + g_AB^2] / (2 g_AB),
/// with n chosen by density_convention. Depends only on BEC parameters,
/// never on the impurity couplings.
inline double threshold_omega(const MixtureParams& p) {
    if (!(p.g_AB > 0.0)) throw zero_intercomponent_coupling();
    p.validate();
    const double n = p.n_threshold();
    const double d = p.g_AA - p.g_BB;
    const double w = n * (d * d + p.g_AB * p.g_AB) / (2.0 * p.g_AB);
    return 2.0 * w / constants::hbar;
}

/// Strong-drive limits of the two mode widths: the surviving width saturates at
/// d_plus_limit while the other collapses like d_minus_scale / sqrt(Omega).
struct WidthAsymptotics {
    double d_plus_limit;    // m
    double d_minus_scale;   // m rad^(1/2) s^(-1/2): width ~ scale/sqrt(Omega)
};

inline WidthAsymptotics width_asymptotics(const MixtureParams& p) {
    p.validate();
    const double hb = constants::hbar;
    const double n = p.n_total();  // matrix-consistent density (see README)
    WidthAsymptotics w;
    w.d_plus_limit = std::sqrt((hb * hb / (2.0 * p.m_b)) / ((p.g_AA + p.g_BB + p.g_AB) * n));
    w.d_minus_scale = std::sqrt(hb / (2.0 * p.m_b));
    return w;
}

/// mu_i = 2 g_ii n0_i + g_AB n0_j - (hbar Omega / 2) sqrt(n0_j / n0_i).
inline double chemical_potential(const MixtureParams& p, const RamanDrive& drive,
                                 Component which) {
    p.validate();
    drive.validate();
    const double w = 0.5 * constants::hbar * drive.omega_rabi;
    if (which == Component::A)
        return 2.0 * p.g_AA * p.n0_A + p.g_AB * p.n0_B - w * std::sqrt(p.n0_B / p.n0_A);
    return 2.0 * p.g_BB * p.n0_B + p.g_AB * p.n0_A - w * std::sqrt(p.n0_A / p.n0_B);
}

}  // namespace polaron1d
