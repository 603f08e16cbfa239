#pragma once

#include <cmath>

#include "polaron1d/constants.hpp"
#include "polaron1d/params.hpp"

// The linear system satisfied by the condensate deformations:
//   [d^2/dx^2 - M] (theta_A, theta_B)^T = (gamma_A, gamma_B)^T rho(x).
// This header defines M and gamma for arbitrary component densities; it is the
// single shared system definition between the closed-form modules and the
// finite-difference oracle.

namespace polaron1d {

struct CouplingMatrix {
    double m_AA, m_AB, m_BA, m_BB;  // 1/m^2
    double gamma_A, gamma_B;        // source coefficients, m^-3/2 per unit rho weight

    double trace() const { return m_AA + m_BB; }
    double det() const { return m_AA * m_BB - m_AB * m_BA; }
};

inline CouplingMatrix coupling_matrix(const MixtureParams& p, const RamanDrive& drive) {
    p.validate();
    drive.validate();
    const double c = 2.0 * p.m_b / (constants::hbar * constants::hbar);
    const double w = 0.5 * constants::hbar * drive.omega_rabi;
    CouplingMatrix m;
    m.m_AA = c * (4.0 * p.g_AA * p.n0_A + w * std::sqrt(p.n0_B / p.n0_A));
    m.m_BB = c * (4.0 * p.g_BB * p.n0_B + w * std::sqrt(p.n0_A / p.n0_B));
    m.m_AB = c * (2.0 * p.g_AB * std::sqrt(p.n0_A * p.n0_B) - w);
    m.m_BA = m.m_AB;
    m.gamma_A = c * p.g_abA * std::sqrt(p.n0_A);
    m.gamma_B = c * p.g_abB * std::sqrt(p.n0_B);
    return m;
}

}  // namespace polaron1d
