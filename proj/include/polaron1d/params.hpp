#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "polaron1d/constants.hpp"
#include "polaron1d/errors.hpp"

namespace polaron1d {

/// Meaning of the density symbol n in the threshold formula: the sum of the
/// two component densities, or one component's density. The matrix entries and
/// every eigen-derived quantity always use the per-component n0_i directly.
enum class DensityConvention { total, per_component };

/// All physical inputs, SI units, frequencies angular. Immutable value type:
/// validate() once after construction, then share freely.
struct MixtureParams {
    double m_b = 0.0;        // BEC atom mass (kg)
    double m_a = 0.0;        // impurity mass (kg); absent from all 1D formulas
    double n0_A = 0.0;       // component line densities (1/m)
    double n0_B = 0.0;
    double g_AA = 0.0;       // intra/inter-component 1D couplings (J m)
    double g_BB = 0.0;
    double g_AB = 0.0;
    double g_abA = 0.0;      // impurity-BEC 1D couplings (J m)
    double g_abB = 0.0;
    double omega_perp = 0.0;  // transverse trap (rad/s)
    double omega_long = 0.0;  // longitudinal trap (rad/s)
    double lattice_a = 0.0;   // lattice spacing (m)
    double sigma = 0.0;       // Wannier gaussian width parameter (m)
    DensityConvention density_convention = DensityConvention::per_component;

    void validate() const {
        auto pos = [](double v, const char* name) {
            if (!(v > 0.0) || !std::isfinite(v))
                throw validation_error(std::string(name) + " must be strictly positive");
        };
        pos(m_b, "m_b");
        pos(m_a, "m_a");
        pos(n0_A, "n0_A");
        pos(n0_B, "n0_B");
        pos(g_AA, "g_AA");
        pos(g_BB, "g_BB");
        // g_AB = 0 constructs a decoupled mixture; operations that need the
        // intercomponent coupling throw zero_intercomponent_coupling instead
        if (!(g_AB >= 0.0) || !std::isfinite(g_AB))
            throw validation_error("g_AB must be >= 0");
        pos(omega_perp, "omega_perp");
        pos(omega_long, "omega_long");
        pos(lattice_a, "lattice_a");
        pos(sigma, "sigma");
        if (!std::isfinite(g_abA) || !std::isfinite(g_abB))
            throw validation_error("impurity couplings must be finite");
    }

    /// Soft checks: violations are physics caveats, not construction failures.
    std::vector<std::string> warnings() const {
        std::vector<std::string> w;
        const double gmax = std::max({g_AA, g_BB, g_AB});
        const double nmax = std::max(n0_A, n0_B);
        const double ratio = nmax * gmax / (constants::hbar * omega_perp);
        if (ratio > 0.1)
            w.push_back("1D validity: n0*g / (hbar*omega_perp) = " + std::to_string(ratio) +
                        " > 0.1");
        if (!(sigma < lattice_a))
            w.push_back("sigma = " + std::to_string(sigma * 1e9) +
                        " nm is not smaller than the lattice spacing " +
                        std::to_string(lattice_a * 1e9) + " nm");
        return w;
    }

    bool equal_densities() const {
        return std::fabs(n0_A - n0_B) <= 1e-12 * std::max(n0_A, n0_B);
    }

    double n_total() const { return n0_A + n0_B; }

    /// The n that enters the threshold formula, per density_convention.
    double n_threshold() const {
        return density_convention == DensityConvention::total ? n_total() : n0_A;
    }
};

/// Effective two-photon Raman coupling strength Omega (rad/s).
struct RamanDrive {
    double omega_rabi = 0.0;

    void validate() const {
        if (!(omega_rabi >= 0.0) || !std::isfinite(omega_rabi))
            throw validation_error("omega_rabi must be >= 0");
    }
};

/// Rb-87 mixture probed by K-41 impurities in a 532 nm lattice; the default
/// working point of every sweep and verification run.
inline MixtureParams reference_params() {
    MixtureParams p;
    p.m_b = constants::mass_rb87;
    p.m_a = constants::mass_k41;
    p.n0_A = 3e6;   // 3 um^-1 per component
    p.n0_B = 3e6;
    p.g_AA = 2.08e-37;
    p.g_AB = 2.03e-37;  // the larger of the two printed cross/intra values; see README
    p.g_BB = 1.99e-37;
    p.g_abA = 100.0 * p.g_AA;
    p.g_abB = 100.0 * p.g_AA;
    p.omega_perp = constants::two_pi * 34e3;
    p.omega_long = constants::two_pi * 18e3;
    p.lattice_a = 532e-9;
    p.sigma = 200e-9;
    p.density_convention = DensityConvention::per_component;
    p.validate();
    return p;
}

/// Olshanii confinement-renormalized 1D coupling from a 3D scattering length.
/// g1D = (2 hbar^2 a3d / (m a_perp^2)) / (1 - C a3d/a_perp), C = 1.0326,
/// a_perp = sqrt(hbar/(m omega_perp)), m the reduced mass of the pair.
inline double g1d_from_3d(double a3d, double reduced_mass, double omega_perp) {
    if (!(reduced_mass > 0.0) || !(omega_perp > 0.0))
        throw validation_error("g1d_from_3d: mass and omega_perp must be positive");
    if (!std::isfinite(a3d)) throw validation_error("g1d_from_3d: a3d must be finite");
    const double a_perp = std::sqrt(constants::hbar / (reduced_mass * omega_perp));
    const double denom = 1.0 - constants::olshanii_c * a3d / a_perp;
    if (std::fabs(denom) < 1e-12)
        throw confinement_resonance("a3d/a_perp = " + std::to_string(a3d / a_perp));
    return (2.0 * constants::hbar * constants::hbar * a3d / (reduced_mass * a_perp * a_perp)) /
           denom;
}

/// Omega = 4 Omega_1 Omega_2 / Delta. All arguments angular frequencies.
inline RamanDrive raman_from_two_photon(double omega1, double omega2, double detuning) {
    if (detuning == 0.0) throw zero_detuning();
    if (omega1 < 0.0 || omega2 < 0.0)
        throw validation_error("single-photon Rabi frequencies must be >= 0");
    const double omega = 4.0 * omega1 * omega2 / detuning;
    if (omega < 0.0)
        throw negative_coupling("4*O1*O2/Delta = " + std::to_string(omega) + " rad/s");
    return RamanDrive{omega};
}

}  // namespace polaron1d
