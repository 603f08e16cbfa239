#pragma once

#include <cmath>
#include <vector>

#include "polaron1d/constants.hpp"
#include "polaron1d/errors.hpp"

namespace polaron1d {

/// Lattice impurities in the gaussian Wannier limit. Each center carries a
/// normalized gaussian exp(-(x-x0)^2/sigma^2)/sqrt(pi sigma^2) of weight n_m,
/// so the integrated density is the total occupation.
struct ImpurityDensity {
    std::vector<double> centers;      // m
    std::vector<double> occupations;  // mean atom number per site, >= 0
    double sigma = 0.0;               // shared gaussian width (m)

    void validate() const {
        if (!(sigma > 0.0)) throw validation_error("ImpurityDensity: sigma must be > 0");
        if (centers.empty()) throw validation_error("ImpurityDensity: no sites");
        if (centers.size() != occupations.size())
            throw validation_error("ImpurityDensity: centers/occupations size mismatch");
        for (double n : occupations)
            if (!(n >= 0.0)) throw validation_error("ImpurityDensity: occupations must be >= 0");
    }

    double total_occupation() const {
        double s = 0.0;
        for (double n : occupations) s += n;
        return s;
    }

    double rho(double x) const {
        const double norm = 1.0 / std::sqrt(constants::pi * sigma * sigma);
        double r = 0.0;
        for (std::size_t m = 0; m < centers.size(); ++m) {
            const double u = (x - centers[m]) / sigma;
            r += occupations[m] * norm * std::exp(-u * u);
        }
        return r;
    }

    static ImpurityDensity single_site(double x0, double sigma, double n = 1.0) {
        return ImpurityDensity{{x0}, {n}, sigma};
    }

    /// Two unit-occupation impurities a distance d apart, centered on the origin.
    static ImpurityDensity pair(double d, double sigma) {
        return ImpurityDensity{{-0.5 * d, 0.5 * d}, {1.0, 1.0}, sigma};
    }
};

}  // namespace polaron1d
