#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "dcesim/errors.hpp"

// Domain types shared by all computation modules.
//
// Unit convention: the configuration layer accepts cavity geometry in units
// with c = 1; everything downstream runs in dimensionless internal units with
// omega0 = 1, i.e. times are omega0*t and frequencies are omega/omega0. The
// conversion happens once, in the factory functions below.

namespace dcesim {

inline constexpr const char* kVersion = "0.1.0";

/// Static cavity geometry and medium.
struct CavityConfig {
    int mode_index;                 // m >= 1
    double cavity_length;           // L > 0, units with c = 1
    double refractive_index_base;   // n0 > 0
    double wavenumber;              // k_m = 2*pi*m/L
    double base_frequency;          // omega0 = k_m/n0  (c = 1)

    bool operator==(const CavityConfig&) const = default;
};

inline CavityConfig make_cavity(int mode_index, double cavity_length,
                                double refractive_index_base) {
    if (mode_index < 1)
        throw ValidationError("mode_index", "must be a positive integer");
    if (!(cavity_length > 0.0) || !std::isfinite(cavity_length))
        throw ValidationError("cavity_length", "must be positive and finite");
    if (!(refractive_index_base > 0.0) || !std::isfinite(refractive_index_base))
        throw ValidationError("refractive_index_base", "must be positive and finite");

    CavityConfig cfg{};
    cfg.mode_index = mode_index;
    cfg.cavity_length = cavity_length;
    cfg.refractive_index_base = refractive_index_base;
    cfg.wavenumber = 2.0 * std::numbers::pi * static_cast<double>(mode_index) / cavity_length;
    cfg.base_frequency = cfg.wavenumber / refractive_index_base;
    return cfg;
}

/// A lossy cavity mode. All frequencies in units of omega0.
struct QuasiMode {
    int mode_index;
    double center_frequency;   // omega_m/omega0; 1 for a nondispersive medium
    double quality_factor;     // Q > 0
    double linewidth;          // gamma_m = omega_m/Q
    double coherence_time;     // tau = 1/gamma_m

    bool operator==(const QuasiMode&) const = default;
};

inline QuasiMode make_quasimode(const CavityConfig& cfg, double quality_factor) {
    if (!(quality_factor > 0.0) || !std::isfinite(quality_factor))
        throw ValidationError("quality_factor", "must be positive and finite");

    QuasiMode qm{};
    qm.mode_index = cfg.mode_index;
    qm.center_frequency = 1.0;   // nondispersive: omega_m = omega0
    qm.quality_factor = quality_factor;
    qm.linewidth = qm.center_frequency / quality_factor;
    qm.coherence_time = 1.0 / qm.linewidth;
    return qm;
}

/// Construct a quasi-mode directly from its linewidth (units of omega0).
inline QuasiMode make_quasimode_from_linewidth(const CavityConfig& cfg, double linewidth) {
    if (!(linewidth > 0.0) || !std::isfinite(linewidth))
        throw ValidationError("linewidth", "must be positive and finite");
    return make_quasimode(cfg, 1.0 / linewidth);
}

/// Sinusoidal refractive-index drive n(t) = n0*(1 + epsilon*sin(Omega*t)).
struct ModulationProfile {
    double amplitude;         // epsilon, 0 <= epsilon < 1
    double drive_frequency;   // Omega/omega0 > 0
    double coupling_rate;     // nu0/omega0 = epsilon/2
    double bessel_argument;   // alpha = 2*epsilon/(Omega/omega0)

    bool operator==(const ModulationProfile&) const = default;
};

inline ModulationProfile make_modulation(double epsilon, double drive_frequency) {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
        throw ValidationError("epsilon", "must be nonnegative and finite");
    if (epsilon >= 1.0)
        throw ValidationError("epsilon", "must be < 1 (perturbative drive)");
    if (!(drive_frequency > 0.0) || !std::isfinite(drive_frequency))
        throw ValidationError("drive_frequency", "must be positive and finite");

    ModulationProfile prof{};
    prof.amplitude = epsilon;
    prof.drive_frequency = drive_frequency;
    prof.coupling_rate = 0.5 * epsilon;
    prof.bessel_argument = 2.0 * epsilon / drive_frequency;
    return prof;
}

/// Coefficients (u, v) of the two-mode Bogoliubov transformation.
/// Vacuum initial condition is (1, 0); the pair number is |v|^2 and
/// |u|^2 - |v|^2 = 1 holds along exact evolution.
struct BogoliubovPair {
    std::complex<double> u{1.0, 0.0};
    std::complex<double> v{0.0, 0.0};

    double pair_number() const { return std::norm(v); }
    double unitarity_defect() const { return std::abs(std::norm(u) - std::norm(v) - 1.0); }
};

/// Computation routes for the mean pair number <N_m(t)>.
enum class Method {
    quadrature,        // spectral quadrature over the quasi-mode linewidth
    closed_weak,       // (nu0/gamma)^2 (1 - e^{-gamma t})^2
    closed_general,    // sinh^2[(nu0/gamma)(1 - e^{-gamma t})]
    phenomenological,  // sinh^2(nu0 t) e^{-gamma t}
    ode_oracle,        // brute-force Bogoliubov evolution at xi = 0
};

inline const std::vector<Method>& all_methods() {
    static const std::vector<Method> m = {Method::quadrature, Method::closed_weak,
                                          Method::closed_general, Method::phenomenological,
                                          Method::ode_oracle};
    return m;
}

inline std::string method_tag(Method m) {
    switch (m) {
        case Method::quadrature: return "quadrature";
        case Method::closed_weak: return "closed_weak";
        case Method::closed_general: return "closed_general";
        case Method::phenomenological: return "phenomenological";
        case Method::ode_oracle: return "ode_oracle";
    }
    return "unknown";
}

inline Method parse_method(const std::string& tag) {
    for (Method m : all_methods())
        if (method_tag(m) == tag) return m;
    throw ValidationError("methods", "unknown method tag '" + tag + "'");
}

/// Time grid specification, in units of the coherence time tau.
struct TimeGrid {
    double t_min_over_tau = 1e-3;
    double t_max_over_tau = 10.0;
    int points = 200;
    bool log_spacing = true;

    bool operator==(const TimeGrid&) const = default;
};

/// Expand a grid to times in internal units (omega0*t), strictly increasing.
inline std::vector<double> make_times(const TimeGrid& grid, double linewidth) {
    if (grid.points < 1)
        throw ValidationError("grid.points", "must be >= 1");
    if (!(grid.t_min_over_tau >= 0.0))
        throw ValidationError("grid.t_min", "must be >= 0");
    if (grid.log_spacing && !(grid.t_min_over_tau > 0.0))
        throw ValidationError("grid.t_min", "must be > 0 for log spacing");
    if (!(grid.t_max_over_tau > grid.t_min_over_tau) && grid.points > 1)
        throw ValidationError("grid.t_max", "must exceed grid.t_min");

    const double tau = 1.0 / linewidth;
    std::vector<double> t(static_cast<std::size_t>(grid.points));
    if (grid.points == 1) {
        t[0] = grid.t_min_over_tau * tau;
        return t;
    }
    const int n = grid.points - 1;
    if (grid.log_spacing) {
        const double lr = std::log(grid.t_max_over_tau / grid.t_min_over_tau);
        for (int i = 0; i <= n; ++i)
            t[static_cast<std::size_t>(i)] =
                grid.t_min_over_tau * tau * std::exp(lr * static_cast<double>(i) / n);
    } else {
        for (int i = 0; i <= n; ++i)
            t[static_cast<std::size_t>(i)] =
                tau * (grid.t_min_over_tau +
                       (grid.t_max_over_tau - grid.t_min_over_tau) * static_cast<double>(i) / n);
    }
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1]))
            throw ValidationError("grid", "times must be strictly increasing");
    return t;
}

/// Numerical controls shared by the computation modules.
struct NumericsOptions {
    double quadrature_tol = 1e-8;   // relative tolerance of the linewidth quadrature
    double cutoff = 1e4;            // K: integration window is |xi| <= K*gamma
    double ode_tol = 1e-9;          // local relative error of the Bogoliubov integrator
    int l_max = 8;                  // Bessel series truncation order
    int n_max = 30;                 // sinh^2 power-series truncation

    bool operator==(const NumericsOptions&) const = default;
};

/// Time grid plus <N_m(t)> per computation method.
struct PhotonNumberSeries {
    std::vector<double> times;                     // omega0*t, strictly increasing
    double linewidth = 0.0;                        // gamma, for t/tau labelling
    std::map<Method, std::vector<double>> values;  // one array per method, same length
    std::vector<std::string> warnings;
};

} // namespace dcesim
