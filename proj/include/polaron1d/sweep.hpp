#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "polaron1d/energy.hpp"
#include "polaron1d/errors.hpp"
#include "polaron1d/modes.hpp"

namespace polaron1d {

enum class SweepVariable { distance, omega, both };

struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 0;
    bool log = false;

    void validate() const {
        if (count < 2) throw validation_error("grid: count must be >= 2");
        if (!(min < max)) throw validation_error("grid: min must be < max");
        if (log && !(min > 0.0)) throw validation_error("grid: log spacing requires min > 0");
    }

    std::vector<double> values() const {
        validate();
        std::vector<double> v(count);
        for (std::size_t i = 0; i < count; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(count - 1);
            v[i] = log ? min * std::pow(max / min, t) : min + (max - min) * t;
        }
        return v;
    }
};

struct SweepSpec {
    SweepVariable variable = SweepVariable::distance;
    GridSpec range;        // primary variable
    GridSpec omega_range;  // second axis for `both`
    std::string output_path;
    bool normalize = true;  // populate the normalized column (always cheap)
};

namespace detail {

/// Order-independent parallel map: out[i] = f(i). Results land by index, so
/// output bytes do not depend on the thread count.
inline void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& f) {
    if (threads <= 1 || n < 2 * static_cast<std::size_t>(threads)) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::atomic<std::size_t> next{0};
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                f(i);
            }
        });
    for (auto& th : pool) th.join();
}

}  // namespace detail

/// |delta_e(Omega = 0, d = 0)|: the normalization anchor of every exported curve.
inline double normalization_anchor(const MixtureParams& p) {
    return std::fabs(pair_energy(p, RamanDrive{0.0}, 0.0).delta_e);
}

/// delta_e(d) at fixed drive.
inline EnergyCurve sweep_distance(const MixtureParams& p, const RamanDrive& drive,
                                  const GridSpec& grid, unsigned threads = 1) {
    const auto ds = grid.values();
    const double anchor = normalization_anchor(p);
    EnergyCurve curve;
    curve.kind = CurveKind::vs_distance;
    curve.points.resize(ds.size());
    detail::parallel_for(ds.size(), threads, [&](std::size_t i) {
        const auto e = pair_energy(p, drive, ds[i]);
        auto& pt = curve.points[i];
        pt.abscissa = ds[i];
        pt.delta_e = e.delta_e;
        pt.branch_plus = e.branch_plus;
        pt.branch_minus = e.branch_minus;
        pt.raman_cross = e.raman_cross;
        pt.normalized = e.delta_e / anchor;
    });
    return curve;
}

/// delta_e(Omega) at fixed separation.
inline EnergyCurve sweep_omega_pair(const MixtureParams& p, const GridSpec& grid, double d,
                                    unsigned threads = 1) {
    const auto oms = grid.values();
    const double anchor = normalization_anchor(p);
    EnergyCurve curve;
    curve.kind = CurveKind::vs_omega;
    curve.points.resize(oms.size());
    detail::parallel_for(oms.size(), threads, [&](std::size_t i) {
        const auto e = pair_energy(p, RamanDrive{oms[i]}, d);
        auto& pt = curve.points[i];
        pt.abscissa = oms[i];
        pt.delta_e = e.delta_e;
        pt.branch_plus = e.branch_plus;
        pt.branch_minus = e.branch_minus;
        pt.raman_cross = e.raman_cross;
        pt.normalized = e.delta_e / anchor;
    });
    return curve;
}

/// delta_e over the (Omega, d) plane, omega-major ordering.
inline EnergyCurve sweep_surface(const MixtureParams& p, const GridSpec& omega_grid,
                                 const GridSpec& d_grid, unsigned threads = 1) {
    const auto oms = omega_grid.values();
    const auto ds = d_grid.values();
    const double anchor = normalization_anchor(p);
    EnergyCurve curve;
    curve.kind = CurveKind::surface;
    curve.points.resize(oms.size() * ds.size());
    detail::parallel_for(curve.points.size(), threads, [&](std::size_t k) {
        const std::size_t i = k / ds.size(), j = k % ds.size();
        const auto e = pair_energy(p, RamanDrive{oms[i]}, ds[j]);
        auto& pt = curve.points[k];
        pt.abscissa = oms[i];
        pt.abscissa2 = ds[j];
        pt.delta_e = e.delta_e;
        pt.branch_plus = e.branch_plus;
        pt.branch_minus = e.branch_minus;
        pt.raman_cross = e.raman_cross;
        pt.normalized = e.delta_e / anchor;
    });
    return curve;
}

/// One row of the drive sweep: mode widths and depths plus the single-impurity
/// energy, each normalized to its zero-drive value. Depth follows |K_i/eta_i|.
struct ModeSweepPoint {
    double omega = 0.0;
    double omega_over_limit = 0.0;
    double eta_plus = 0.0, eta_minus = 0.0;
    double width_plus = 0.0, width_minus = 0.0;
    double width_plus_norm = 0.0, width_minus_norm = 0.0;
    double depth_plus_norm = 0.0, depth_minus_norm = 0.0;
    double single_total = 0.0, single_binding = 0.0;
    double single_total_norm = 0.0;
};

inline std::vector<ModeSweepPoint> sweep_omega_modes(const MixtureParams& p,
                                                     const GridSpec& grid,
                                                     unsigned threads = 1) {
    const auto oms = grid.values();
    const double om_lim = threshold_omega(p);
    const auto m0 = effective_modes(p, RamanDrive{0.0});
    const auto e0 = single_impurity_energy(p, RamanDrive{0.0});
    const double depth0_p = std::fabs(m0.k_plus / m0.eta_plus);
    const double depth0_m = std::fabs(m0.k_minus / m0.eta_minus);
    std::vector<ModeSweepPoint> out(oms.size());
    detail::parallel_for(oms.size(), threads, [&](std::size_t i) {
        const RamanDrive dr{oms[i]};
        const auto m = effective_modes(p, dr);
        const auto e = single_impurity_energy(p, dr);
        auto& pt = out[i];
        pt.omega = oms[i];
        pt.omega_over_limit = oms[i] / om_lim;
        pt.eta_plus = m.eta_plus;
        pt.eta_minus = m.eta_minus;
        pt.width_plus = m.width_plus();
        pt.width_minus = m.width_minus();
        pt.width_plus_norm = m.width_plus() / m0.width_plus();
        pt.width_minus_norm = m.width_minus() / m0.width_minus();
        pt.depth_plus_norm = std::fabs(m.k_plus / m.eta_plus) / depth0_p;
        pt.depth_minus_norm = std::fabs(m.k_minus / m.eta_minus) / depth0_m;
        pt.single_total = e.total;
        pt.single_binding = e.binding;
        pt.single_total_norm = e.total / e0.total;
    });
    return out;
}

}  // namespace polaron1d
