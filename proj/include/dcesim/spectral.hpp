#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "dcesim/errors.hpp"
#include "dcesim/quadrature.hpp"

// Lorentzian quasi-mode spectral shape and the quadrature kernel over the
// linewidth variable xi = omega - omega_m.
//
// The shape g(xi) = sqrt(2 gamma)/sqrt(xi^2 + gamma^2) satisfies
// integral |g|^2 dxi/2pi = 1 over the real line; the finite window
// |xi| <= K*gamma used numerically misses the tail mass 2/(pi K).

namespace dcesim {

/// Lorentzian profile with half-width gamma plus the numerical controls of the
/// linewidth quadrature.
struct SpectralShape {
    double linewidth;                  // gamma > 0
    double cutoff_multiplier = 1e4;    // K: window is |xi| <= K*gamma
    double quadrature_tolerance = 1e-8;

    bool operator==(const SpectralShape&) const = default;
};

inline SpectralShape make_spectral_shape(double gamma, double cutoff = 1e4, double tol = 1e-8) {
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw ValidationError("linewidth", "must be positive and finite");
    if (!(cutoff > 0.0)) throw ValidationError("cutoff_multiplier", "must be positive");
    if (!(tol > 0.0)) throw ValidationError("quadrature_tolerance", "must be positive");
    return SpectralShape{gamma, cutoff, tol};
}

/// g(xi) = sqrt(2 gamma)/(xi^2 + gamma^2)^{1/2}; even in xi, peak sqrt(2/gamma).
inline double lorentzian_shape(double xi, double gamma) {
    if (!(gamma > 0.0)) throw ValidationError("gamma", "must be positive");
    return std::sqrt(2.0 * gamma) / std::sqrt(xi * xi + gamma * gamma);
}

/// Exact transform: integral e^{-i omega t}/(omega^2 + gamma^2) domega/2pi
///                 = e^{-gamma |t|}/(2 gamma).
inline double lorentzian_fourier(double t, double gamma) {
    if (!(gamma > 0.0)) throw ValidationError("gamma", "must be positive");
    return std::exp(-gamma * std::abs(t)) / (2.0 * gamma);
}

namespace detail {

/// Window breakpoints: 0, +-gamma*2^j, +-X. Geometric toward the tails so the
/// peak region is resolved before refinement starts.
inline std::vector<double> lorentzian_breakpoints(double gamma, double x_max) {
    std::vector<double> right{0.0};
    for (double x = gamma; x < x_max; x *= 2.0) right.push_back(x);
    if (right.back() < x_max) right.push_back(x_max);
    std::vector<double> pts;
    pts.reserve(2 * right.size() - 1);
    for (std::size_t i = right.size(); i-- > 1;) pts.push_back(-right[i]);
    for (double x : right) pts.push_back(x);
    return pts;
}

} // namespace detail

/// Adaptive quadrature of integrand(xi) * (2 gamma/(xi^2 + gamma^2)) / 2pi over
/// the window |xi| <= K*gamma. `phase_rate` is max|d arg(integrand)/d xi|
/// (e.g. 2t for integrands containing e^{2 i xi t}); sub-panels are then kept
/// narrower than pi/phase_rate.
template <typename F>
QuadResult integrate_over_linewidth(F&& integrand, const SpectralShape& shape,
                                    double phase_rate = 0.0) {
    const double gamma = shape.linewidth;
    if (!(gamma > 0.0)) throw ValidationError("linewidth", "must be positive");
    const double x_max = shape.cutoff_multiplier * gamma;

    const double norm = gamma / std::numbers::pi;   // (2 gamma / 2pi)
    auto f = [&](double xi) -> std::complex<double> {
        return integrand(xi) * (norm / (xi * xi + gamma * gamma));
    };

    QuadOptions opt;
    opt.rel_tol = shape.quadrature_tolerance;
    opt.phase_rate = phase_rate;
    return integrate_adaptive(f, detail::lorentzian_breakpoints(gamma, x_max), opt);
}

/// Numerical normalization integral |g(xi)|^2 dxi/2pi over the window.
/// Converges to 1 as K grows; the exact window value is (2/pi) atan(K).
inline double shape_norm(const SpectralShape& shape) {
    const QuadResult r =
        integrate_over_linewidth([](double) { return std::complex<double>(1.0, 0.0); }, shape);
    return r.value.real();
}

/// Numerical evaluation of the defining transform
///   integral e^{-i xi t}/(xi^2 + gamma^2) dxi/2pi  over the full real line,
/// used as the independent oracle for lorentzian_fourier.
///
/// The finite window [-X, X] is integrated adaptively; the remainder is added
/// analytically. For t = 0 the tail is elementary (arctan). Otherwise X is
/// grown until |t| X >= 20 and the tail of each half line is summed by
/// integration by parts,
///   integral_X^inf q e^{-i xi t} dxi =
///       e^{-iXt} [ q/(it) + q'/(it)^2 + q''/(it)^3 ] + O(|q'''|/t^3),
/// whose error is bounded by 24/(X^4 |t|^3) and is negligible for |t| X >= 20.
inline double lorentzian_fourier_by_quadrature(double t, double gamma,
                                               const SpectralShape& shape) {
    if (!(gamma > 0.0)) throw ValidationError("gamma", "must be positive");
    const double at = std::abs(t);
    const double inv2pi = 1.0 / (2.0 * std::numbers::pi);

    double x_max = shape.cutoff_multiplier * gamma;
    double tail = 0.0;
    if (at == 0.0) {
        tail = 2.0 * inv2pi * (std::numbers::pi / 2.0 - std::atan(x_max / gamma)) / gamma;
    } else {
        x_max = std::max(x_max, 20.0 / at);
        const double x2 = x_max * x_max;
        const double q = 1.0 / (x2 + gamma * gamma);
        const double qp = -2.0 * x_max * q * q;
        const double qpp = (6.0 * x2 - 2.0 * gamma * gamma) * q * q * q;
        const std::complex<double> it(0.0, at);
        const std::complex<double> half_tail =
            std::polar(1.0, -x_max * at) * (q / it + qp / (it * it) + qpp / (it * it * it));
        tail = 2.0 * half_tail.real() * inv2pi;   // both half lines; imag parts cancel
    }

    auto f = [&](double xi) -> std::complex<double> {
        return std::polar(inv2pi, -xi * at) / (xi * xi + gamma * gamma);
    };

    // Self-calibrating absolute goal: the window integral of a strongly
    // oscillatory integrand cancels far below its mass, so a first pass fixes
    // the scale and a second pass resolves it.
    QuadOptions opt;
    opt.rel_tol = shape.quadrature_tolerance;
    opt.phase_rate = at;
    const auto breakpoints = detail::lorentzian_breakpoints(gamma, x_max);

    QuadResult r = integrate_adaptive(f, breakpoints, opt);
    for (int pass = 0; pass < 3; ++pass) {
        const double scale = std::abs(r.value.real() + tail);
        const double want =
            std::max(shape.quadrature_tolerance * scale,
                     4.0 * std::numeric_limits<double>::epsilon() * r.abs_mass);
        if (r.error_bound <= want || want <= 0.0) break;
        opt.mass_floor = false;
        opt.abs_tol = want;
        r = integrate_adaptive(f, breakpoints, opt);
    }
    return r.value.real() + tail;
}

} // namespace dcesim
