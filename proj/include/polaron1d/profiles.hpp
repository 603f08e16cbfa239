#pragma once

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <vector>

#include "polaron1d/coupling.hpp"
#include "polaron1d/errors.hpp"
#include "polaron1d/impurity_density.hpp"
#include "polaron1d/modes.hpp"
#include "polaron1d/specfun.hpp"

// Deformation fields in position space: the Green-function convolution kernel
// F and the sampled profiles theta'_+- and theta_A/B.

namespace polaron1d {

namespace detail {
inline bool mutation_hook(const char* name) {
    // Verification-suite sensitivity hook: deliberately biases a closed form
    // when POLARON1D_MUTATE names it. Never set in normal runs.
    static const char* env = std::getenv("POLARON1D_MUTATE");
    return env != nullptr && std::strcmp(env, name) == 0;
}
}  // namespace detail

/// Convolution of the modified-Helmholtz Green function with a unit gaussian:
/// F_{sigma,eta}(x) = integral (1/2 eta) e^{-eta|x-x'|} g_sigma(x') dx'.
/// Evaluated through exp_erfc; both terms carry a - b^2 = -x^2/sigma^2, so the
/// form is stable for arbitrarily large eta*sigma.
inline double f_kernel(double sigma, double eta, double x) {
    if (!(sigma > 0.0) || !(eta > 0.0))
        throw validation_error("f_kernel: sigma and eta must be > 0");
    const double es = eta * sigma;
    const double a1 = 0.25 * es * es + eta * x;
    const double b1 = 0.5 * es + x / sigma;
    const double a2 = 0.25 * es * es - eta * x;
    const double b2 = 0.5 * es - x / sigma;
    double v = (exp_erfc(a1, b1) + exp_erfc(a2, b2)) / (4.0 * eta);
    static const bool mutate = detail::mutation_hook("f_kernel");
    if (mutate) v *= 1.0 + 1e-4;
    return v;
}

/// Sampled effective deformations and their back-transform.
struct DeformationProfile {
    std::vector<double> grid;             // m
    std::vector<double> theta_eff_plus;   // theta'_+ (m^-1/2)
    std::vector<double> theta_eff_minus;  // theta'_- (m^-1/2)
    std::vector<double> theta_A;          // m^-1/2
    std::vector<double> theta_B;
    EffectiveModes modes;
};

/// Uniform grid covering the impurity support out to 30 decay lengths of the
/// slowest mode (profile tails < 1e-12 of peak at the edges).
inline std::vector<double> make_default_grid(const MixtureParams& p, const RamanDrive& drive,
                                             const ImpurityDensity& rho,
                                             std::size_t points = 1u << 14,
                                             double decay_lengths = 30.0) {
    rho.validate();
    const auto m = effective_modes(p, drive);
    double lo = rho.centers.front(), hi = rho.centers.front();
    for (double c : rho.centers) {
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    const double pad = decay_lengths / m.eta_minus;
    std::vector<double> g(points);
    const double x0 = lo - pad, x1 = hi + pad;
    for (std::size_t i = 0; i < points; ++i)
        g[i] = x0 + (x1 - x0) * static_cast<double>(i) / static_cast<double>(points - 1);
    return g;
}

inline DeformationProfile effective_deformations(const MixtureParams& p, const RamanDrive& drive,
                                                 const ImpurityDensity& rho,
                                                 std::vector<double> grid) {
    rho.validate();
    DeformationProfile prof;
    prof.modes = effective_modes(p, drive);
    prof.grid = std::move(grid);
    const std::size_t n = prof.grid.size();
    prof.theta_eff_plus.assign(n, 0.0);
    prof.theta_eff_minus.assign(n, 0.0);
    prof.theta_A.assign(n, 0.0);
    prof.theta_B.assign(n, 0.0);
    const auto& m = prof.modes;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = prof.grid[i];
        double fp = 0.0, fm = 0.0;
        for (std::size_t s = 0; s < rho.centers.size(); ++s) {
            const double dx = x - rho.centers[s];
            fp += rho.occupations[s] * f_kernel(rho.sigma, m.eta_plus, dx);
            fm += rho.occupations[s] * f_kernel(rho.sigma, m.eta_minus, dx);
        }
        const double tp = m.k_plus * fp;
        const double tm = m.k_minus * fm;
        prof.theta_eff_plus[i] = tp;
        prof.theta_eff_minus[i] = tm;
        prof.theta_A[i] = m.transform[0][0] * tp + m.transform[0][1] * tm;
        prof.theta_B[i] = m.transform[1][0] * tp + m.transform[1][1] * tm;
    }
    return prof;
}

/// Max-norm residual of the deformation system on the profile's grid,
/// scaled by max|gamma rho|. Second-order interior differences.
inline double residual(const DeformationProfile& prof, const MixtureParams& p,
                       const RamanDrive& drive, const ImpurityDensity& rho) {
    const std::size_t n = prof.grid.size();
    if (n < 3) throw grid_too_coarse("need at least 3 grid points");
    const double h = prof.grid[1] - prof.grid[0];
    const auto modes = effective_modes(p, drive);
    if (h > 0.05 / modes.eta_plus)
        throw grid_too_coarse("h = " + std::to_string(h) + " m exceeds 0.05/eta_plus");
    const auto cm = coupling_matrix(p, drive);

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = rho.rho(prof.grid[i]);
        scale = std::max(scale, std::fabs(cm.gamma_A * r));
        scale = std::max(scale, std::fabs(cm.gamma_B * r));
    }
    if (scale == 0.0) scale = 1.0;

    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double r = rho.rho(prof.grid[i]);
        const double lapA =
            (prof.theta_A[i - 1] - 2.0 * prof.theta_A[i] + prof.theta_A[i + 1]) / (h * h);
        const double lapB =
            (prof.theta_B[i - 1] - 2.0 * prof.theta_B[i] + prof.theta_B[i + 1]) / (h * h);
        const double resA =
            lapA - cm.m_AA * prof.theta_A[i] - cm.m_AB * prof.theta_B[i] - cm.gamma_A * r;
        const double resB =
            lapB - cm.m_BA * prof.theta_A[i] - cm.m_BB * prof.theta_B[i] - cm.gamma_B * r;
        worst = std::max({worst, std::fabs(resA), std::fabs(resB)});
    }
    return worst / scale;
}

}  // namespace polaron1d
