#pragma once

#include <algorithm>
#include <cmath>
#include <tuple>
#include <utility>
#include <vector>

#include "polaron1d/errors.hpp"

// Adaptive Gauss-Kronrod (G7,K15) integrator used only by the oracle paths.
// Callers pass forced breakpoints for integrand kinks (|x - x'| factors); each
// panel is then smooth and the error estimate is reliable.

namespace polaron1d::oracle {

namespace detail {

// Nodes (positive half) and weights of the 7-15 pair on [-1, 1].
inline constexpr double gk_nodes[8] = {
    0.0, 0.405845151377397166906606412076961, 0.741531185599394439863864773280788,
    0.949107912342758524526189684047851, 0.207784955007898467600689403773245,
    0.586087235467691130294144838258730, 0.864864423359769072789712788640926,
    0.991455371120812639206854697526329};
inline constexpr double g7_weights[8] = {
    0.417959183673469387755102040816327, 0.381830050505118944950369775488975,
    0.279705391489276667901467771423780, 0.129484966168869693270611432679082,
    0.0, 0.0, 0.0, 0.0};
inline constexpr double k15_weights[8] = {
    0.209482141084727828012999174891714, 0.190350578064785409913256402421014,
    0.140653259715525918745189590510238, 0.063092092629978553290700663189204,
    0.204432940075298892414161999234649, 0.169004726639267902826583426598550,
    0.104790010322250183839876322541518, 0.022935322010529224963732008058970};

template <typename F>
inline void gk15(const F& f, double a, double b, double& value, double& err) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double fv[15];
    fv[0] = f(mid);
    for (std::size_t i = 1; i < 8; ++i) {
        const double dx = half * gk_nodes[i];
        fv[2 * i - 1] = f(mid + dx);
        fv[2 * i] = f(mid - dx);
    }
    double g7 = g7_weights[0] * fv[0];
    double k15 = k15_weights[0] * fv[0];
    for (std::size_t i = 1; i < 8; ++i) {
        g7 += g7_weights[i] * (fv[2 * i - 1] + fv[2 * i]);
        k15 += k15_weights[i] * (fv[2 * i - 1] + fv[2 * i]);
    }
    value = k15 * half;
    // QUADPACK-style estimate: |K-G| rescaled by the integrand's variation
    // on the panel.
    const double reskh = 0.5 * k15;
    double resasc = k15_weights[0] * std::fabs(fv[0] - reskh);
    for (std::size_t i = 1; i < 8; ++i)
        resasc += k15_weights[i] *
                  (std::fabs(fv[2 * i - 1] - reskh) + std::fabs(fv[2 * i] - reskh));
    resasc *= std::fabs(half);
    double e = std::fabs((k15 - g7) * half);
    if (resasc != 0.0 && e != 0.0)
        e = resasc * std::min(1.0, std::pow(200.0 * e / resasc, 1.5));
    err = e;
}

}  // namespace detail

struct QuadratureOptions {
    double abs_tol = 1e-14;
    double rel_tol = 1e-11;
    int max_intervals = 4000;
    int presplit = 16;  // uniform initial panels between breakpoints
};

/// Integrate f over [a, b], pre-splitting at the sorted interior breakpoints
/// and uniformly in between so no initial panel can hide a localized feature.
template <typename F>
inline double integrate(const F& f, double a, double b, const QuadratureOptions& opt = {},
                        std::vector<double> breakpoints = {}) {
    if (a == b) return 0.0;
    if (a > b) return -integrate(f, b, a, opt, std::move(breakpoints));

    struct Panel {
        double a, b, value, err;
    };
    std::vector<Panel> heap;
    heap.reserve(64);

    breakpoints.push_back(a);
    breakpoints.push_back(b);
    std::sort(breakpoints.begin(), breakpoints.end());
    std::vector<double> edges;
    const int presplit = std::max(1, opt.presplit);
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double lo = std::max(a, breakpoints[i]);
        const double hi = std::min(b, breakpoints[i + 1]);
        if (hi <= lo) continue;
        for (int k = 0; k < presplit; ++k)
            edges.push_back(lo + (hi - lo) * static_cast<double>(k) / presplit);
        edges.push_back(hi);
    }
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (edges[i + 1] <= edges[i]) continue;
        Panel p{edges[i], edges[i + 1], 0.0, 0.0};
        detail::gk15(f, p.a, p.b, p.value, p.err);
        heap.push_back(p);
    }

    auto total = [&heap]() {
        double v = 0.0, e = 0.0;
        for (const auto& p : heap) {
            v += p.value;
            e += p.err;
        }
        return std::pair<double, double>(v, e);
    };

    auto [v, e] = total();
    for (int round = 0; round < opt.max_intervals; ++round) {
        if (e <= opt.abs_tol || e <= opt.rel_tol * std::fabs(v)) return v;
        std::size_t worst = 0;
        for (std::size_t i = 1; i < heap.size(); ++i)
            if (heap[i].err > heap[worst].err) worst = i;
        const Panel p = heap[worst];
        if (p.b - p.a <= std::fabs(p.a) * 1e-15 + 1e-300) {
            // panel width at rounding limit; accept its contribution as-is
            e -= heap[worst].err;
            heap[worst].err = 0.0;
            continue;
        }
        const double mid = 0.5 * (p.a + p.b);
        Panel left{p.a, mid, 0.0, 0.0}, right{mid, p.b, 0.0, 0.0};
        detail::gk15(f, left.a, left.b, left.value, left.err);
        detail::gk15(f, right.a, right.b, right.value, right.err);
        heap[worst] = left;
        heap.push_back(right);
        v += left.value + right.value - p.value;
        e += left.err + right.err - p.err;
        if ((round & 63) == 63) std::tie(v, e) = total();  // refresh accumulated drift
    }
    std::tie(v, e) = total();
    if (e <= 10.0 * (opt.abs_tol + opt.rel_tol * std::fabs(v))) return v;
    throw quadrature_nonconvergence("error estimate " + std::to_string(e) + " after " +
                                    std::to_string(opt.max_intervals) + " subdivisions");
}

}  // namespace polaron1d::oracle
