#pragma once

#include <cmath>
#include <vector>

#include "polaron1d/coupling.hpp"
#include "polaron1d/errors.hpp"
#include "polaron1d/impurity_density.hpp"

// Finite-difference ground truth for the deformation system: second-order
// central differences, zero Dirichlet boundaries, direct block-tridiagonal
// elimination. Shares only the system definition (coupling.hpp) and parameter
// types with the closed-form modules.

namespace polaron1d::oracle {

struct FdSolution {
    std::vector<double> grid;     // m
    std::vector<double> theta_A;  // m^-1/2
    std::vector<double> theta_B;
    double h = 0.0;               // grid spacing (m)
    double residual_norm = 0.0;   // scaled max interior residual
};

/// Solve the two-component BVP with spacing ~h on
/// [min(center) - extent, max(center) + extent]. The spacing precondition is
/// checked against the largest eigenvalue of the coupling matrix.
inline FdSolution solve_fd(const MixtureParams& p, const RamanDrive& drive,
                           const ImpurityDensity& rho, double h, double extent) {
    rho.validate();
    const auto cm = coupling_matrix(p, drive);

    // eta_max from the matrix itself (works for general densities)
    const double half_tr = 0.5 * cm.trace();
    const double disc = std::sqrt(std::max(0.0, half_tr * half_tr - cm.det()));
    const double lam_max = half_tr + disc;
    const double lam_min = half_tr - disc;
    if (!(lam_min > 0.0))
        throw singular_system("coupling matrix is not positive definite");
    const double eta_max = std::sqrt(lam_max);
    const double eta_min = std::sqrt(lam_min);
    if (h > 0.05 / eta_max)
        throw grid_too_coarse("h = " + std::to_string(h) + " m exceeds 0.05/eta_max");
    if (extent < 12.0 / eta_min)
        throw grid_too_coarse("extent = " + std::to_string(extent) + " m below 12/eta_min");

    double lo = rho.centers.front(), hi = rho.centers.front();
    for (double c : rho.centers) {
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    const double x0 = lo - extent, x1 = hi + extent;
    // even cell count so composite Simpson applies downstream
    std::size_t cells = static_cast<std::size_t>(std::ceil((x1 - x0) / h));
    if (cells % 2) ++cells;
    const std::size_t npts = cells + 1;
    FdSolution sol;
    sol.grid.resize(npts);
    for (std::size_t i = 0; i < npts; ++i)
        sol.grid[i] = x0 + (x1 - x0) * static_cast<double>(i) / static_cast<double>(cells);
    sol.h = sol.grid[1] - sol.grid[0];

    const std::size_t m = npts - 2;  // interior nodes
    const double ih2 = 1.0 / (sol.h * sol.h);

    // Block Thomas: D_j = B - (1/h^4) D_{j-1}^{-1}, B = -2/h^2 I - M.
    std::vector<double> D(4 * m), rhs(2 * m);
    const double B00 = -2.0 * ih2 - cm.m_AA, B01 = -cm.m_AB;
    const double B10 = -cm.m_BA, B11 = -2.0 * ih2 - cm.m_BB;

    auto inv2 = [](const double* a, double* out) {
        const double det = a[0] * a[3] - a[1] * a[2];
        if (!(std::fabs(det) > 1e-300))
            throw singular_system("singular 2x2 pivot in block elimination");
        const double id = 1.0 / det;
        out[0] = a[3] * id;
        out[1] = -a[1] * id;
        out[2] = -a[2] * id;
        out[3] = a[0] * id;
    };

    std::vector<double> Dinv(4 * m);
    for (std::size_t j = 0; j < m; ++j) {
        const double r = rho.rho(sol.grid[j + 1]);
        double* Dj = &D[4 * j];
        double* rj = &rhs[2 * j];
        Dj[0] = B00;
        Dj[1] = B01;
        Dj[2] = B10;
        Dj[3] = B11;
        rj[0] = cm.gamma_A * r;
        rj[1] = cm.gamma_B * r;
        if (j > 0) {
            const double* Pi = &Dinv[4 * (j - 1)];
            const double f = ih2 * ih2;
            Dj[0] -= f * Pi[0];
            Dj[1] -= f * Pi[1];
            Dj[2] -= f * Pi[2];
            Dj[3] -= f * Pi[3];
            const double* rp = &rhs[2 * (j - 1)];
            rj[0] -= ih2 * (Pi[0] * rp[0] + Pi[1] * rp[1]);
            rj[1] -= ih2 * (Pi[2] * rp[0] + Pi[3] * rp[1]);
        }
        inv2(Dj, &Dinv[4 * j]);
    }

    sol.theta_A.assign(npts, 0.0);
    sol.theta_B.assign(npts, 0.0);
    double uA = 0.0, uB = 0.0;
    for (std::size_t jj = m; jj-- > 0;) {
        const double* Pi = &Dinv[4 * jj];
        const double r0 = rhs[2 * jj] - ih2 * uA;
        const double r1 = rhs[2 * jj + 1] - ih2 * uB;
        uA = Pi[0] * r0 + Pi[1] * r1;
        uB = Pi[2] * r0 + Pi[3] * r1;
        sol.theta_A[jj + 1] = uA;
        sol.theta_B[jj + 1] = uB;
    }

    // residual check on the solved system
    double scale = 0.0, worst = 0.0;
    for (std::size_t i = 0; i < npts; ++i) {
        const double r = rho.rho(sol.grid[i]);
        scale = std::max({scale, std::fabs(cm.gamma_A * r), std::fabs(cm.gamma_B * r)});
    }
    if (scale == 0.0) scale = 1.0;
    for (std::size_t i = 1; i + 1 < npts; ++i) {
        const double r = rho.rho(sol.grid[i]);
        const double lapA = (sol.theta_A[i - 1] - 2.0 * sol.theta_A[i] + sol.theta_A[i + 1]) * ih2;
        const double lapB = (sol.theta_B[i - 1] - 2.0 * sol.theta_B[i] + sol.theta_B[i + 1]) * ih2;
        const double resA = lapA - cm.m_AA * sol.theta_A[i] - cm.m_AB * sol.theta_B[i] -
                            cm.gamma_A * r;
        const double resB = lapB - cm.m_BA * sol.theta_A[i] - cm.m_BB * sol.theta_B[i] -
                            cm.gamma_B * r;
        worst = std::max({worst, std::fabs(resA), std::fabs(resB)});
    }
    sol.residual_norm = worst / scale;
    return sol;
}

}  // namespace polaron1d::oracle
