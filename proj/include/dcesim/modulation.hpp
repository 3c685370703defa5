#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "dcesim/core.hpp"
#include "dcesim/special.hpp"

// The time-dependent drive, in internal units (omega0 = 1, times are omega0*t):
//
//   n(t)     = n0 (1 + epsilon sin Omega t)
//   f(t)     = (1/2n) dn/dt  ~=  (epsilon Omega/2) cos Omega t
//   phi_m(t) = t + (epsilon/Omega) cos Omega t          (leading order)
//   nu_xi(t) = f(t) e^{2i(phi_m(t) + xi t)}
//
// The phase origin is fixed so phi_m(0) = epsilon/Omega; any constant offset
// only enters through the squeezing phase delta_xi, which is taken as zero
// throughout.

namespace dcesim {

/// n(t) = n0 (1 + epsilon sin Omega t); strictly positive for epsilon < 1.
inline double refractive_index(double t, const CavityConfig& cfg,
                               const ModulationProfile& prof) {
    if (prof.amplitude >= 1.0)
        throw ValidationError("epsilon", "must be < 1 (perturbative drive)");
    return cfg.refractive_index_base *
           (1.0 + prof.amplitude * std::sin(prof.drive_frequency * t));
}

/// Leading-order modulation rate f(t) = (epsilon Omega/2) cos Omega t.
inline double modulation_rate(double t, const ModulationProfile& prof) {
    return 0.5 * prof.amplitude * prof.drive_frequency * std::cos(prof.drive_frequency * t);
}

/// Exact rate (1/2n) dn/dt = epsilon Omega cos(Omega t) / (2 (1 + epsilon sin Omega t)),
/// used by the brute-force evolution oracle.
inline double modulation_rate_exact(double t, const ModulationProfile& prof) {
    const double w = prof.drive_frequency;
    return 0.5 * prof.amplitude * w * std::cos(w * t) /
           (1.0 + prof.amplitude * std::sin(w * t));
}

/// Leading-order dynamical phase phi_m(t) = t + (epsilon/Omega) cos Omega t.
inline double dynamical_phase(double t, const ModulationProfile& prof) {
    return t + (prof.amplitude / prof.drive_frequency) * std::cos(prof.drive_frequency * t);
}

/// Truncated Bessel expansion of the squared phase factor:
///   sum_{l=-l_max}^{l_max} i^l J_l(alpha) e^{i(2 + l Omega)t}  ->  e^{2i phi_m(t)}.
inline std::complex<double> phase_factor_series(double t, const ModulationProfile& prof,
                                                int l_max) {
    if (l_max < 0) throw ValidationError("l_max", "must be >= 0");
    const double alpha = prof.bessel_argument;
    const double omega_drive = prof.drive_frequency;
    std::complex<double> sum{0.0, 0.0};
    for (int l = -l_max; l <= l_max; ++l) {
        // i^l, reduced mod 4
        static constexpr std::complex<double> kPowI[4] = {
            {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
        const std::complex<double> il = kPowI[((l % 4) + 4) % 4];
        sum += il * bessel_j(l, alpha) * std::polar(1.0, (2.0 + l * omega_drive) * t);
    }
    return sum;
}

/// Small-argument magnitude estimate J_l(alpha) ~= alpha^l/(2^l l!), l >= 0.
/// Only used for ranking resonance branches, not for series evaluation.
inline double bessel_small_arg(int l, double alpha) {
    if (l < 0) throw ValidationError("l", "must be >= 0");
    double v = 1.0;
    for (int k = 1; k <= l; ++k) v *= 0.5 * alpha / static_cast<double>(k);
    return v;
}

/// Coupling nu_xi(t) = f(t) e^{2i(phi_m(t) + xi t)} at leading order in epsilon.
inline std::complex<double> coupling(double t, double xi, const ModulationProfile& prof) {
    return modulation_rate(t, prof) *
           std::polar(1.0, 2.0 * (dynamical_phase(t, prof) + xi * t));
}

/// One branch of the resonance condition omega_{+-} = 2 + (l +- 1) Omega = 0.
struct ResonanceBranch {
    int harmonic_order;                  // l
    int sign;                            // the +-1 of omega_{+-}
    double resonant_frequency;           // Omega_l = -2/(l + sign), units of omega0
    double bessel_argument_at_resonance; // alpha_l = -epsilon (l + sign)
    double bessel_weight;                // |J_l(alpha_l)| small-argument estimate

    bool operator==(const ResonanceBranch&) const = default;
};

/// Enumerate the physical resonance branches for l in [l_min, l_max], both
/// signs, dropping branches with l + sign = 0 or Omega_l <= 0, ranked by the
/// small-argument Bessel weight of the dominant term. The l = 0 branch
/// (Omega = 2, alpha = epsilon) ranks first whenever it is in range.
inline std::vector<ResonanceBranch> resonance_table(const ModulationProfile& prof, int l_min,
                                                    int l_max) {
    if (l_min > l_max) throw ValidationError("l_range", "must be nonempty");
    std::vector<ResonanceBranch> table;
    for (int l = l_min; l <= l_max; ++l) {
        for (int sign : {-1, +1}) {
            const int denom = l + sign;
            if (denom == 0) continue;
            const double omega = -2.0 / static_cast<double>(denom);
            if (!(omega > 0.0)) continue;
            ResonanceBranch br{};
            br.harmonic_order = l;
            br.sign = sign;
            br.resonant_frequency = omega;
            br.bessel_argument_at_resonance = -prof.amplitude * static_cast<double>(denom);
            br.bessel_weight =
                bessel_small_arg(std::abs(l), std::abs(br.bessel_argument_at_resonance));
            table.push_back(br);
        }
    }
    std::sort(table.begin(), table.end(), [](const ResonanceBranch& x, const ResonanceBranch& y) {
        if (x.bessel_weight != y.bessel_weight) return x.bessel_weight > y.bessel_weight;
        if (std::abs(x.harmonic_order) != std::abs(y.harmonic_order))
            return std::abs(x.harmonic_order) < std::abs(y.harmonic_order);
        if (x.harmonic_order != y.harmonic_order) return x.harmonic_order < y.harmonic_order;
        return x.sign < y.sign;
    });
    return table;
}

} // namespace dcesim
