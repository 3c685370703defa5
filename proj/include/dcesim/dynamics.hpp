#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "dcesim/core.hpp"
#include "dcesim/modulation.hpp"
#include "dcesim/special.hpp"

// Evolution of the two-mode amplitudes.
//
// The Heisenberg equations for the internal pair (A_m, A^dag_{-m}) reduce to a
// classical 2x2 complex coefficient system for the Bogoliubov pair (u, v):
//
//     du/dt = nu_xi(t) conj(v),   dv/dt = nu_xi(t) conj(u),
//
// from (u, v) = (1, 0); this is exact for the quadratic coupling and conserves
// |u|^2 - |v|^2 = 1. The pair number created from vacuum is |v|^2.
//
// The brute-force oracle integrates the exact coupling: both the rate
// (1/2n) dn/dt and the phase phi_m(t) = integral omega_m(t') dt' are carried
// without the leading-order expansion, the phase as an extra ODE component
// with phi_m(0) = epsilon/Omega.

namespace dcesim {

enum class DriveForm {
    full,           // exact sinusoidal coupling nu_xi(t)
    rotating_wave,  // constant coupling nu0, phases removed (test harness)
};

struct EvolveResult {
    BogoliubovPair pair{};
    double time = 0.0;
    double max_unitarity_defect = 0.0;
    std::size_t steps = 0;
};

struct EvolvePath {
    std::vector<BogoliubovPair> states;
    double max_unitarity_defect = 0.0;
    std::size_t steps = 0;
};

namespace detail {

using OdeState = std::array<double, 5>;   // Re u, Im u, Re v, Im v, phi

struct BogoliubovSystem {
    double xi;
    ModulationProfile prof;
    DriveForm form;

    OdeState rhs(double t, const OdeState& y) const {
        const std::complex<double> u{y[0], y[1]};
        const std::complex<double> v{y[2], y[3]};
        std::complex<double> nu;
        double dphi = 0.0;
        if (form == DriveForm::rotating_wave) {
            nu = prof.coupling_rate;
        } else {
            const double w = prof.drive_frequency;
            const double denom = 1.0 + prof.amplitude * std::sin(w * t);
            const double f = 0.5 * prof.amplitude * w * std::cos(w * t) / denom;
            dphi = 1.0 / denom;   // omega_m(t)/omega0 = 1/(1 + epsilon sin Omega t)
            nu = f * std::polar(1.0, 2.0 * (y[4] + xi * t));
        }
        const std::complex<double> du = nu * std::conj(v);
        const std::complex<double> dv = nu * std::conj(u);
        return {du.real(), du.imag(), dv.real(), dv.imag(), dphi};
    }
};

// Cash-Karp 5(4) embedded pair.
inline constexpr double kCkA[6][5] = {
    {0.0, 0.0, 0.0, 0.0, 0.0},
    {1.0 / 5.0, 0.0, 0.0, 0.0, 0.0},
    {3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0},
    {3.0 / 10.0, -9.0 / 10.0, 6.0 / 5.0, 0.0, 0.0},
    {-11.0 / 54.0, 5.0 / 2.0, -70.0 / 27.0, 35.0 / 27.0, 0.0},
    {1631.0 / 55296.0, 175.0 / 512.0, 575.0 / 13824.0, 44275.0 / 110592.0, 253.0 / 4096.0}};
inline constexpr double kCkC[6] = {0.0, 1.0 / 5.0, 3.0 / 10.0, 3.0 / 5.0, 1.0, 7.0 / 8.0};
inline constexpr double kCkB5[6] = {37.0 / 378.0,  0.0, 250.0 / 621.0,
                                    125.0 / 594.0, 0.0, 512.0 / 1771.0};
inline constexpr double kCkB4[6] = {2825.0 / 27648.0,  0.0,             18575.0 / 48384.0,
                                    13525.0 / 55296.0, 277.0 / 14336.0, 1.0 / 4.0};

struct StepOutcome {
    OdeState y5;
    double error_norm;   // scaled local error; accept when <= 1
};

inline StepOutcome ck_step(const BogoliubovSystem& sys, double t, const OdeState& y, double h,
                           double rel_tol) {
    std::array<OdeState, 6> k;
    k[0] = sys.rhs(t, y);
    for (int s = 1; s < 6; ++s) {
        OdeState ys = y;
        for (int j = 0; j < s; ++j) {
            if (kCkA[s][j] == 0.0) continue;
            for (std::size_t i = 0; i < ys.size(); ++i) ys[i] += h * kCkA[s][j] * k[j][i];
        }
        k[s] = sys.rhs(t + kCkC[s] * h, ys);
    }

    StepOutcome out{};
    out.y5 = y;
    double max_err = 0.0;
    double max_mag = 1.0;   // |u| >= 1 always; the state scale is at least 1
    for (std::size_t i = 0; i < y.size(); ++i) {
        double acc5 = 0.0, acc4 = 0.0;
        for (int s = 0; s < 6; ++s) {
            acc5 += kCkB5[s] * k[s][i];
            acc4 += kCkB4[s] * k[s][i];
        }
        out.y5[i] = y[i] + h * acc5;
        max_err = std::max(max_err, std::abs(h * (acc5 - acc4)));
        max_mag = std::max({max_mag, std::abs(y[i]), std::abs(out.y5[i])});
    }
    out.error_norm = max_err / (rel_tol * max_mag);
    return out;
}

/// Integrate from t = 0, invoking observe(state, time) at each requested stop.
/// Stops must be nondecreasing and nonnegative.
template <typename Observer>
inline void integrate_bogoliubov(const BogoliubovSystem& sys, const std::vector<double>& stops,
                                 double rel_tol, Observer&& observe, double* max_defect_out,
                                 std::size_t* steps_out) {
    if (!(rel_tol > 0.0)) throw ValidationError("tol", "must be positive");

    OdeState y{1.0, 0.0, 0.0, 0.0, sys.prof.amplitude / sys.prof.drive_frequency};
    double t = 0.0;
    double max_defect = 0.0;
    std::size_t steps = 0;
    constexpr std::size_t kMaxSteps = 50'000'000;

    auto defect_of = [](const OdeState& s) {
        return std::abs((s[0] * s[0] + s[1] * s[1]) - (s[2] * s[2] + s[3] * s[3]) - 1.0);
    };
    auto pair_of = [](const OdeState& s) {
        BogoliubovPair p;
        p.u = {s[0], s[1]};
        p.v = {s[2], s[3]};
        return p;
    };

    // Initial step: a fraction of the fastest scale in the problem.
    const double drive_period = 2.0 * std::numbers::pi / sys.prof.drive_frequency;
    const double coupling_time =
        sys.prof.coupling_rate > 0.0 ? 1.0 / sys.prof.coupling_rate : drive_period;
    double h = 0.05 * (sys.form == DriveForm::rotating_wave ? coupling_time
                                                            : std::min(drive_period, coupling_time));

    for (double stop : stops) {
        if (stop < t)
            throw ValidationError("t_end", "observation times must be nondecreasing and >= 0");
        while (t < stop) {
            const double h_try = std::min(h, stop - t);
            const StepOutcome out = ck_step(sys, t, y, h_try, rel_tol);
            if (++steps > kMaxSteps)
                throw IntegrationError("integration exceeded step budget", {y[0], y[1]},
                                       {y[2], y[3]}, t);
            if (out.error_norm <= 1.0) {
                t += h_try;
                y = out.y5;
                max_defect = std::max(max_defect, defect_of(y));
                const double grow =
                    out.error_norm > 0.0
                        ? std::min(5.0, 0.9 * std::pow(out.error_norm, -0.2))
                        : 5.0;
                h = h_try * grow;
            } else {
                h = h_try * std::max(0.1, 0.9 * std::pow(out.error_norm, -0.25));
                if (!(h > 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, t)))
                    throw IntegrationError("step size underflow", {y[0], y[1]}, {y[2], y[3]}, t);
            }
        }
        observe(pair_of(y), t);
    }
    if (max_defect_out) *max_defect_out = max_defect;
    if (steps_out) *steps_out = steps;
}

} // namespace detail

/// Brute-force evolution of the Bogoliubov pair from vacuum to t_end.
inline EvolveResult evolve_bogoliubov(double xi, const ModulationProfile& prof, double t_end,
                                      double rel_tol = 1e-9,
                                      DriveForm form = DriveForm::full) {
    if (!(t_end >= 0.0)) throw ValidationError("t_end", "must be >= 0");
    detail::BogoliubovSystem sys{xi, prof, form};
    EvolveResult res;
    detail::integrate_bogoliubov(
        sys, {t_end}, rel_tol,
        [&](const BogoliubovPair& p, double t) {
            res.pair = p;
            res.time = t;
        },
        &res.max_unitarity_defect, &res.steps);
    return res;
}

/// As above, sampling the trajectory at each time in `times` (nondecreasing).
inline EvolvePath evolve_bogoliubov_path(double xi, const ModulationProfile& prof,
                                         const std::vector<double>& times,
                                         double rel_tol = 1e-9,
                                         DriveForm form = DriveForm::full) {
    detail::BogoliubovSystem sys{xi, prof, form};
    EvolvePath path;
    path.states.reserve(times.size());
    detail::integrate_bogoliubov(
        sys, times, rel_tol,
        [&](const BogoliubovPair& p, double) { path.states.push_back(p); },
        &path.max_unitarity_defect, &path.steps);
    return path;
}

/// Resonant squeezing function r(xi, t) = nu0 int_0^t e^{2 i xi t'} dt'
///                                      = nu0 (e^{2 i xi t} - 1)/(2 i xi),
/// with the xi -> 0 limit nu0*t. Satisfies r(-xi, t) = conj(r(xi, t)).
inline std::complex<double> squeezing_resonant(double xi, double t, double nu0) {
    if (!(t >= 0.0)) throw ValidationError("t", "must be >= 0");
    return nu0 * phase_integral(2.0 * xi, t);
}

/// General squeezing function for a sinusoidal drive of any frequency:
///   r(xi, t) = (epsilon Omega/4) sum_l i^l J_l(alpha)
///              [ E(omega_+ + 2 xi, t) + E(omega_- + 2 xi, t) ],
/// omega_+- = 2 + (l +- 1) Omega, E(theta, t) = (e^{i theta t} - 1)/(i theta).
inline std::complex<double> squeezing_general(double xi, double t, const ModulationProfile& prof,
                                              int l_max) {
    if (!(t >= 0.0)) throw ValidationError("t", "must be >= 0");
    if (l_max < 0) throw ValidationError("l_max", "must be >= 0");
    const double alpha = prof.bessel_argument;
    const double omega_drive = prof.drive_frequency;
    const double prefactor = 0.25 * prof.amplitude * omega_drive;
    std::complex<double> sum{0.0, 0.0};
    for (int l = -l_max; l <= l_max; ++l) {
        static constexpr std::complex<double> kPowI[4] = {
            {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
        const std::complex<double> il = kPowI[((l % 4) + 4) % 4];
        const double w_plus = 2.0 + (l + 1) * omega_drive;
        const double w_minus = 2.0 + (l - 1) * omega_drive;
        sum += il * bessel_j(l, alpha) *
               (phase_integral(w_plus + 2.0 * xi, t) + phase_integral(w_minus + 2.0 * xi, t));
    }
    return prefactor * sum;
}

/// Pairs per internal mode for squeezing magnitude |r|: sinh^2(|r|).
inline double internal_photon_number(std::complex<double> r) { return sinh_sq(std::abs(r)); }

} // namespace dcesim
