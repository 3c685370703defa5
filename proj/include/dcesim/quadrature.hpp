#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

#include "dcesim/errors.hpp"
#include "dcesim/special.hpp"

// Globally adaptive Gauss-Kronrod 7/15 quadrature for complex-valued
// integrands on a finite union of panels.
//
// Oscillatory integrands are handled up front: when the caller supplies the
// maximum phase rate p = max|d(arg f)/d xi|, every initial panel is split to
// width <= pi/p, so no panel spans more than half an oscillation and the
// embedded error estimate stays trustworthy (no aliasing). Refinement then
// bisects the panel with the largest error estimate until the global estimate
// meets the goal. The final sum runs over panels ordered by position with
// compensated accumulation, so results are deterministic.

namespace dcesim {

struct QuadOptions {
    double rel_tol = 1e-8;
    double abs_tol = 0.0;             // optional absolute error goal
    double phase_rate = 0.0;          // 0 = integrand treated as non-oscillatory
    std::size_t max_panels = 1u << 22;
    // With the mass floor enabled, integrals that cancel to ~0 converge once
    // the error estimate is small relative to integral(|f|); disable it when
    // a deep-cancellation result must be resolved to abs_tol.
    bool mass_floor = true;
};

struct QuadResult {
    std::complex<double> value{0.0, 0.0};
    double error_bound = 0.0;   // achieved global error estimate
    double abs_mass = 0.0;      // estimate of integral(|f|)
    std::size_t panels = 0;
};

namespace detail {

// 15-point Kronrod abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights, as tabulated in QUADPACK (dqk15).
inline constexpr double kGk15Nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr double kGk15WeightsK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr double kGk15WeightsG[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a = 0.0;
    double b = 0.0;
    std::complex<double> value{0.0, 0.0};
    double error = 0.0;
    double abs_mass = 0.0;
};

template <typename F>
Panel eval_panel(F&& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const std::complex<double> fc = f(center);
    std::complex<double> kronrod = kGk15WeightsK[7] * fc;
    std::complex<double> gauss = kGk15WeightsG[3] * fc;
    double mass = kGk15WeightsK[7] * std::abs(fc);

    for (int j = 0; j < 7; ++j) {
        const double dx = half * kGk15Nodes[j];
        const std::complex<double> f1 = f(center - dx);
        const std::complex<double> f2 = f(center + dx);
        kronrod += kGk15WeightsK[j] * (f1 + f2);
        mass += kGk15WeightsK[j] * (std::abs(f1) + std::abs(f2));
        if (j & 1) gauss += kGk15WeightsG[(j - 1) / 2] * (f1 + f2);
    }

    Panel p;
    p.a = a;
    p.b = b;
    p.value = half * kronrod;
    p.error = half * std::abs(kronrod - gauss);
    p.abs_mass = half * mass;
    return p;
}

struct PanelWorse {
    bool operator()(const Panel& x, const Panel& y) const {
        if (x.error != y.error) return x.error < y.error;
        return x.a > y.a;   // deterministic tie break: leftmost first
    }
};

inline std::complex<double> ordered_sum(std::vector<Panel>& panels, double* error_out,
                                        double* mass_out) {
    std::sort(panels.begin(), panels.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    KahanSum re, im, err, mass;
    for (const Panel& p : panels) {
        re.add(p.value.real());
        im.add(p.value.imag());
        err.add(p.error);
        mass.add(p.abs_mass);
    }
    if (error_out) *error_out = err.value();
    if (mass_out) *mass_out = mass.value();
    return {re.value(), im.value()};
}

} // namespace detail

/// Adaptive quadrature of f over the union of [breakpoints[i], breakpoints[i+1]].
/// Breakpoints must be strictly increasing. Throws NumericalError (carrying the
/// partial result and error bound) if the goal cannot be met.
template <typename F>
QuadResult integrate_adaptive(F&& f, const std::vector<double>& breakpoints,
                              const QuadOptions& opt = {}) {
    if (breakpoints.size() < 2)
        throw ValidationError("breakpoints", "need at least one panel");

    const double width = breakpoints.back() - breakpoints.front();
    const double max_width =
        opt.phase_rate > 0.0 ? std::numbers::pi / opt.phase_rate : width;

    std::vector<detail::Panel> panels;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double a = breakpoints[i];
        const double b = breakpoints[i + 1];
        if (!(b > a)) throw ValidationError("breakpoints", "must be strictly increasing");
        const auto pieces =
            static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / max_width)));
        if (panels.size() + pieces > opt.max_panels)
            throw NumericalError("quadrature: oscillation splitting exceeds panel budget",
                                 {0.0, 0.0}, std::numeric_limits<double>::infinity());
        for (std::size_t k = 0; k < pieces; ++k) {
            const double pa = a + (b - a) * static_cast<double>(k) / static_cast<double>(pieces);
            const double pb =
                k + 1 == pieces
                    ? b
                    : a + (b - a) * static_cast<double>(k + 1) / static_cast<double>(pieces);
            panels.push_back(detail::eval_panel(f, pa, pb));
        }
    }

    double err_total = 0.0;
    double mass_total = 0.0;
    std::complex<double> value_running = detail::ordered_sum(panels, &err_total, &mass_total);

    // The |K - G| estimate cannot fall below the rounding noise of the panel
    // sums, ~eps * integral(|f|); the goal is floored there so deep-cancellation
    // integrals terminate once they are resolved to machine precision.
    auto goal = [&](double value_mag, double mass) {
        double g = std::max(opt.abs_tol, opt.rel_tol * value_mag);
        if (opt.mass_floor) g = std::max(g, opt.rel_tol * mass);
        return std::max(g, 4.0 * std::numeric_limits<double>::epsilon() * mass);
    };

    const double min_width = 1e-15 * std::abs(width);
    std::priority_queue<detail::Panel, std::vector<detail::Panel>, detail::PanelWorse> queue(
        detail::PanelWorse{}, std::move(panels));

    while (err_total > goal(std::abs(value_running), mass_total) && err_total > 1e-300 &&
           queue.size() < opt.max_panels) {
        const detail::Panel worst = queue.top();
        if (worst.error <= 0.0 || worst.b - worst.a <= min_width) break;
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const detail::Panel left = detail::eval_panel(f, worst.a, mid);
        const detail::Panel right = detail::eval_panel(f, mid, worst.b);
        value_running += left.value + right.value - worst.value;
        err_total += left.error + right.error - worst.error;
        mass_total += left.abs_mass + right.abs_mass - worst.abs_mass;
        queue.push(left);
        queue.push(right);
    }

    std::vector<detail::Panel> final_panels;
    final_panels.reserve(queue.size());
    while (!queue.empty()) {
        final_panels.push_back(queue.top());
        queue.pop();
    }

    QuadResult res;
    res.value = detail::ordered_sum(final_panels, &res.error_bound, &res.abs_mass);
    res.panels = final_panels.size();

    if (res.error_bound > goal(std::abs(res.value), res.abs_mass))
        throw NumericalError("quadrature: tolerance not met after refinement", res.value,
                             res.error_bound);
    return res;
}

} // namespace dcesim
