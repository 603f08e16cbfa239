#pragma once

#include <stdexcept>
#include <string>

namespace polaron1d {

// Base class for everything this library throws.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid physical inputs (non-positive mass, density, ...).
struct validation_error : error {
    explicit validation_error(const std::string& msg) : error("validation: " + msg) {}
};

// Config file problems; carries a line number when known.
struct config_error : error {
    int line = 0;
    explicit config_error(const std::string& msg, int line_no = 0)
        : error("config: " + (line_no > 0 ? "line " + std::to_string(line_no) + ": " : "") + msg),
          line(line_no) {}
};

struct confinement_resonance : error {
    explicit confinement_resonance(const std::string& msg) : error("ConfinementResonance: " + msg) {}
};

struct zero_detuning : error {
    zero_detuning() : error("ZeroDetuning: Raman detuning must be nonzero") {}
};

struct negative_coupling : error {
    explicit negative_coupling(const std::string& msg) : error("NegativeCoupling: " + msg) {}
};

struct dynamical_instability : error {
    explicit dynamical_instability(const std::string& msg) : error("DynamicalInstability: " + msg) {}
};

struct zero_intercomponent_coupling : error {
    zero_intercomponent_coupling() : error("ZeroInterComponentCoupling: g_AB must be > 0") {}
};

// Closed forms assume n0_A == n0_B; the general-density path is the FD solver.
struct unequal_densities : error {
    unequal_densities() : error("UnequalDensities: closed forms require n0_A == n0_B") {}
};

struct grid_too_coarse : error {
    explicit grid_too_coarse(const std::string& msg) : error("GridTooCoarse: " + msg) {}
};

struct singular_system : error {
    explicit singular_system(const std::string& msg) : error("SingularSystem: " + msg) {}
};

struct quadrature_nonconvergence : error {
    explicit quadrature_nonconvergence(const std::string& msg)
        : error("QuadratureNonConvergence: " + msg) {}
};

struct no_sign_change : error {
    explicit no_sign_change(const std::string& msg) : error("NoSignChange: " + msg) {}
};

// Genuine overflow in exp(a)*erfc(b), i.e. a - b^2 beyond double range.
struct overflow_error : error {
    explicit overflow_error(const std::string& msg) : error("Overflow: " + msg) {}
};

struct io_error : error {
    explicit io_error(const std::string& msg) : error("io: " + msg) {}
};

}  // namespace polaron1d
