#pragma once

#include <cmath>
#include <vector>

#include "polaron1d/constants.hpp"
#include "polaron1d/errors.hpp"
#include "polaron1d/impurity_density.hpp"
#include "polaron1d/oracle/fd_solver.hpp"
#include "polaron1d/oracle/quadrature.hpp"
#include "polaron1d/params.hpp"

// Quadrature ground truth for the convolution kernels and numeric assembly of
// the energy functional from solved profiles. Shares no code with the
// closed-form modules beyond parameter/density types.

namespace polaron1d::oracle {

/// Adaptive quadrature of integral (1/2 eta) e^{-eta|x-x'|} rho(x') dx'.
/// The kink at x' = x is a forced subdivision point.
inline double convolve_green(double eta, const ImpurityDensity& rho, double x,
                             const QuadratureOptions& opt_in = {}) {
    if (!(eta > 0.0)) throw validation_error("convolve_green: eta must be > 0");
    rho.validate();
    double lo = rho.centers.front(), hi = rho.centers.front();
    for (double c : rho.centers) {
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    // gaussian support bound: e^{-30^2} is far below double noise
    lo -= 30.0 * rho.sigma;
    hi += 30.0 * rho.sigma;

    QuadratureOptions opt = opt_in;
    const double peak = 0.5 * rho.total_occupation() / eta;  // kernel bound times weight
    opt.abs_tol = std::max(opt.abs_tol * peak, 1e-290);

    auto f = [&](double xp) { return std::exp(-eta * std::fabs(x - xp)) / (2.0 * eta) * rho.rho(xp); };
    std::vector<double> brk;
    if (x > lo && x < hi) brk.push_back(x);
    for (double c : rho.centers)
        if (c > lo && c < hi) brk.push_back(c);
    return integrate(f, lo, hi, opt, std::move(brk));
}

/// Triple-integral overlap of two deformation clouds at separation d, reduced
/// to nested adaptive 1D quadratures. Target relative accuracy ~1e-9.
inline double q_quadrature(double sigma, double eta_i, double eta_j, double d) {
    if (!(sigma > 0.0) || !(eta_i > 0.0) || !(eta_j > 0.0) || !(d >= 0.0))
        throw validation_error("q_quadrature: need positive parameters, d >= 0");
    const auto g0 = ImpurityDensity::single_site(0.0, sigma);
    const auto gd = ImpurityDensity::single_site(d, sigma);

    QuadratureOptions inner;
    inner.abs_tol = 1e-16;
    inner.rel_tol = 1e-12;

    auto f = [&](double x) {
        return convolve_green(eta_i, g0, x, inner) * convolve_green(eta_j, gd, x, inner);
    };
    const double eta_min = std::min(eta_i, eta_j);
    const double lo = -45.0 / eta_min - 35.0 * sigma;
    const double hi = d + 45.0 / eta_min + 35.0 * sigma;
    QuadratureOptions outer;
    outer.rel_tol = 1e-10;
    outer.abs_tol = 1e-300;
    outer.max_intervals = 2000;
    return integrate(f, lo, hi, outer, {0.0, d});
}

/// Composite Simpson on the (even-celled) FD grid.
inline double simpson(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    if (n < 3 || (n - 1) % 2 != 0)
        throw validation_error("simpson: need an odd number of points");
    const double h = xs[1] - xs[0];
    double s = ys.front() + ys.back();
    for (std::size_t i = 1; i + 1 < n; ++i) s += ys[i] * ((i % 2) ? 4.0 : 2.0);
    return s * h / 3.0;
}

/// Constant interaction offset per impurity: sum_i g_i^(ab) n0_i.
inline double a0_per_impurity(const MixtureParams& p) {
    return p.g_abA * p.n0_A + p.g_abB * p.n0_B;
}

/// Energy functional assembled numerically from a solved profile: the constant
/// term per impurity plus sum_i g_i^(ab) sqrt(n0_i) int rho theta_i plus the
/// drive's -hbar Omega int theta_A theta_B.
inline double energy_from_profiles(const MixtureParams& p, const RamanDrive& drive,
                                   const ImpurityDensity& rho, const FdSolution& sol) {
    p.validate();
    drive.validate();
    rho.validate();
    const std::size_t n = sol.grid.size();
    std::vector<double> ra(n), rb(n), tab(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = rho.rho(sol.grid[i]);
        ra[i] = r * sol.theta_A[i];
        rb[i] = r * sol.theta_B[i];
        tab[i] = sol.theta_A[i] * sol.theta_B[i];
    }
    const double e_int = p.g_abA * std::sqrt(p.n0_A) * simpson(sol.grid, ra) +
                         p.g_abB * std::sqrt(p.n0_B) * simpson(sol.grid, rb) -
                         constants::hbar * drive.omega_rabi * simpson(sol.grid, tab);
    return a0_per_impurity(p) * rho.total_occupation() + e_int;
}

}  // namespace polaron1d::oracle
