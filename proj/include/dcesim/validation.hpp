#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dcesim/core.hpp"
#include "dcesim/dynamics.hpp"
#include "dcesim/modulation.hpp"
#include "dcesim/output.hpp"
#include "dcesim/photon_number.hpp"
#include "dcesim/spectral.hpp"
#include "dcesim/svg.hpp"

// Built-in verification suite: analytic-limit and oracle-equivalence checks
// covering every computation route, each with a pinned tolerance. The same
// suite backs the `validate` CLI subcommand and the acceptance test binary.

namespace dcesim {

struct CriterionResult {
    std::string id;
    std::string name;
    double measured = 0.0;    // worst deviation found
    double tolerance = 0.0;   // gate
    bool pass = false;
    std::string note;
};

struct ValidationOptions {
    std::string scratch_dir;    // artifacts for the figure criterion; empty = system temp
    std::string corrupt_id;     // self-test mode: force the named criterion to fail
};

namespace detail {

inline double rel_dev(double value, double reference) {
    return std::abs(value - reference) / std::abs(reference);
}

inline std::vector<double> log_spaced(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] =
            lo * std::exp(std::log(hi / lo) * static_cast<double>(i) / (n - 1));
    return v;
}

} // namespace detail

/// Criteria 1a/1b: numerical Lorentzian normalization over the truncated window.
inline CriterionResult criterion_norm(double cutoff, double tol, const std::string& id) {
    CriterionResult c{id, "lorentzian normalization (K=" + format_g17(cutoff) + ")", 0.0, tol,
                      false, ""};
    for (double gamma : {1e-3, 1e-2, 1.0}) {
        const double n = shape_norm(make_spectral_shape(gamma, cutoff, 1e-9));
        c.measured = std::max(c.measured, std::abs(n - 1.0));
    }
    c.note = "window tail mass 2/(pi K) = " + format_g17(2.0 / (std::numbers::pi * cutoff));
    return c;
}

/// Criterion 2: the defining transform integral against e^{-gamma|t|}/(2 gamma).
inline CriterionResult criterion_fourier() {
    CriterionResult c{"2", "fourier identity of the lorentzian", 0.0, 1e-6, false, ""};
    for (double gamma : {1e-2, 1.0}) {
        const SpectralShape shape = make_spectral_shape(gamma);
        for (double gt : {0.0, 1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, 5.0, 8.0, 12.0, 16.0, 20.0}) {
            const double t = gt / gamma;
            const double num = lorentzian_fourier_by_quadrature(t, gamma, shape);
            const double ref = lorentzian_fourier(t, gamma);
            c.measured = std::max(c.measured, detail::rel_dev(num, ref));
        }
    }
    c.note = "gamma in {0.01, 1}, gamma*t in [0, 20]";
    return c;
}

/// Criterion 3: weak-squeezing quadrature against the weak closed form.
inline CriterionResult criterion_weak_evolution() {
    CriterionResult c{"3", "weak-squeezing time evolution", 0.0, 1e-4, false, ""};
    const double gamma = 0.01;
    const SpectralShape shape = make_spectral_shape(gamma);
    const auto times = detail::log_spaced(0.01 / gamma, 10.0 / gamma, 50);
    for (double ratio : {0.01, 0.05, 0.1}) {
        const double nu0 = ratio * gamma;
        for (double t : times) {
            const double a = photon_number_quadrature_weak(t, nu0, gamma, shape);
            const double b = photon_number_weak_closed(t, nu0, gamma);
            c.measured = std::max(c.measured, detail::rel_dev(a, b));
        }
    }
    c.note = "nu0/gamma in {0.01, 0.05, 0.1}, 50 log-spaced t in [0.01 tau, 10 tau]";
    return c;
}

/// Criterion 4: short-time limit N = nu0^2 t^2 at t = 0.01 tau.
inline CriterionResult criterion_short_time() {
    CriterionResult c{"4", "short-time limit nu0^2 t^2", 0.0, 0.02, false, ""};
    const double gamma = 0.01;
    const SpectralShape shape = make_spectral_shape(gamma);
    const double t = 0.01 / gamma;
    for (double ratio : {0.01, 0.05, 0.1}) {
        const double nu0 = ratio * gamma;
        const double a = photon_number_quadrature_weak(t, nu0, gamma, shape);
        c.measured = std::max(c.measured, detail::rel_dev(a, nu0 * nu0 * t * t));
    }
    c.note = "t = 0.01 tau";
    return c;
}

/// Criterion 5: weak asymptote nu0^2 tau^2 at t = 20 tau.
inline CriterionResult criterion_weak_asymptote() {
    CriterionResult c{"5", "weak asymptote nu0^2 tau^2", 0.0, 1e-3, false, ""};
    const double gamma = 0.01;
    const SpectralShape shape = make_spectral_shape(gamma);
    const double t = 20.0 / gamma;
    for (double ratio : {0.01, 0.05, 0.1}) {
        const double nu0 = ratio * gamma;
        const double a = photon_number_quadrature_weak(t, nu0, gamma, shape);
        c.measured = std::max(c.measured, detail::rel_dev(a, (nu0 / gamma) * (nu0 / gamma)));
    }
    c.note = "t = 20 tau";
    return c;
}

/// Criterion 6a: series oracle against the general closed form.
inline CriterionResult criterion_series_oracle() {
    CriterionResult c{"6a", "series oracle vs general closed form", 0.0, 1e-8, false, ""};
    const double gamma = 0.01;
    const auto times = make_times(TimeGrid{}, gamma);
    for (double ratio : {0.5, 1.0, 3.0}) {
        const double nu0 = ratio * gamma;
        for (double t : times) {
            const double a = photon_number_series_oracle(t, nu0, gamma, 30);
            const double b = photon_number_general_closed(t, nu0, gamma);
            c.measured = std::max(c.measured, detail::rel_dev(a, b));
        }
    }
    c.note = "n_max = 30, nu0/gamma in {0.5, 1, 3}, 200-point grid";
    return c;
}

/// Criterion 6b: general closed form within 1% of sinh^2(nu0/gamma) at t = 5 tau.
/// The closed form gives N(5 tau)/N_inf = [sinh(x(1-e^-5))/sinh(x)]^2, which
/// deviates by 1.3% even as x -> 0 and by 4% at x = 3, so this gate cannot
/// pass as stated; the measured values are reported honestly. The 1% level is
/// reached by ~6.5 tau (and holds to ~0.03% at 10 tau).
inline CriterionResult criterion_general_asymptote() {
    CriterionResult c{"6b", "general asymptote within 1% at t = 5 tau", 0.0, 0.01, false, ""};
    const double gamma = 0.01;
    std::ostringstream note;
    note << "at 10 tau:";
    for (double ratio : {0.5, 1.0, 3.0}) {
        const double nu0 = ratio * gamma;
        const double n_inf = asymptotic_pair_number(nu0, gamma, AsymptoticRegime::general);
        c.measured = std::max(
            c.measured,
            detail::rel_dev(photon_number_general_closed(5.0 / gamma, nu0, gamma), n_inf));
        note << ' '
             << format_g17(
                    detail::rel_dev(photon_number_general_closed(10.0 / gamma, nu0, gamma),
                                    n_inf));
    }
    c.note = note.str();
    return c;
}

struct BogoliubovCriteria {
    CriterionResult rotating_wave;
    CriterionResult full_drive;
    CriterionResult unitarity;
};

/// Criteria 7a-7c: the brute-force evolution oracle.
inline BogoliubovCriteria criterion_bogoliubov() {
    BogoliubovCriteria out{
        {"7a", "rotating-wave harness vs sinh^2(nu0 t)", 0.0, 1e-8, false, "nu0 t <= 3"},
        {"7b", "full oscillatory drive vs sinh^2(nu0 t)", 0.0, 0.05, false,
         "epsilon = 0.01, Omega = 2, xi = 0"},
        {"7c", "unitarity |u|^2 - |v|^2 = 1", 0.0, 1e-7, false, "both runs, tol = 1e-12"},
    };
    const ModulationProfile prof = make_modulation(0.01, 2.0);
    const double nu0 = prof.coupling_rate;
    const double tol = 1e-12;

    std::vector<double> stops;
    for (double nt : {0.5, 1.0, 2.0, 3.0}) stops.push_back(nt / nu0);
    {
        const EvolvePath path =
            evolve_bogoliubov_path(0.0, prof, stops, tol, DriveForm::rotating_wave);
        for (std::size_t i = 0; i < stops.size(); ++i)
            out.rotating_wave.measured =
                std::max(out.rotating_wave.measured,
                         detail::rel_dev(path.states[i].pair_number(), sinh_sq(nu0 * stops[i])));
        out.unitarity.measured = std::max(out.unitarity.measured, path.max_unitarity_defect);
    }
    {
        const std::vector<double> full_stops = {1.0 / nu0, 2.0 / nu0, 3.0 / nu0};
        const EvolvePath path = evolve_bogoliubov_path(0.0, prof, full_stops, tol);
        for (std::size_t i = 0; i < full_stops.size(); ++i)
            out.full_drive.measured = std::max(
                out.full_drive.measured,
                detail::rel_dev(path.states[i].pair_number(), sinh_sq(nu0 * full_stops[i])));
        out.unitarity.measured = std::max(out.unitarity.measured, path.max_unitarity_defect);
    }
    return out;
}

/// Criterion 8: lossless-limit recovery, relative error <= gamma*t for gamma*t <= 0.1.
inline CriterionResult criterion_lossless_limit() {
    CriterionResult c{"8", "lossless limit: closed form vs sinh^2(nu0 t)", 0.0, 1.0, false,
                      "measured is max of rel_err/(gamma t)"};
    const double gamma = 0.01;
    for (double ratio : {0.5, 1.0, 3.0}) {
        const double nu0 = ratio * gamma;
        for (double gt : detail::log_spaced(1e-3, 0.1, 20)) {
            const double t = gt / gamma;
            const double a = photon_number_general_closed(t, nu0, gamma);
            const double b = sinh_sq(nu0 * t);
            c.measured = std::max(c.measured, detail::rel_dev(a, b) / gt);
        }
    }
    return c;
}

/// Criterion 9: saturation-vs-divergence comparison figure, emitted deterministically.
inline CriterionResult criterion_figure(const std::string& scratch_dir) {
    CriterionResult c{"9", "figure: saturation vs phenomenological divergence", 0.0, 1.0, false,
                      "measured is max of normalized sub-checks"};
    namespace fs = std::filesystem;
    const fs::path dir = scratch_dir.empty()
                             ? fs::temp_directory_path() / "dcesim-validate"
                             : fs::path(scratch_dir);

    const double gamma = 0.01;
    const double nu0 = 2.0 * gamma;
    const ModulationProfile prof = make_modulation(2.0 * nu0, 2.0);   // epsilon = 2 nu0 at Omega=2
    const CavityConfig cavity = make_cavity(1, 2.0 * std::numbers::pi, 1.0);
    const QuasiMode qm = make_quasimode(cavity, 1.0 / gamma);

    const std::vector<Method> methods = {Method::closed_general, Method::phenomenological};
    const PhotonNumberSeries series = compute_series(qm, prof, TimeGrid{}, methods);

    const double t10 = series.times.back();   // grid ends at 10 tau
    const double gen = photon_number_general_closed(t10, nu0, gamma);
    const double phen = phenomenological_model(t10, nu0, gamma);
    const double n_inf = sinh_sq(nu0 / gamma);

    // (i) >= 10x separation at 10 tau; (ii) saturating curve within 1% of sinh^2(2)
    const double sep = phen / gen;
    c.measured = std::max(c.measured, 10.0 / sep);
    c.measured = std::max(c.measured, detail::rel_dev(gen, n_inf) / 0.01);

    // (iii) deterministic CSV and SVG emission: recompute everything and
    // require byte-identical artifacts
    const PhotonNumberSeries series2 = compute_series(qm, prof, TimeGrid{}, methods);
    const std::string csv1 = series_csv(series);
    const std::string svg1 = series_svg(series, nu0, gamma, /*with_timestamp=*/false);
    const std::string csv2 = series_csv(series2);
    const std::string svg2 = series_svg(series2, nu0, gamma, /*with_timestamp=*/false);
    atomic_write(dir / "figure_series.csv", csv1);
    atomic_write(dir / "figure_series.svg", svg1);
    if (csv1 != csv2 || svg1 != svg2) c.measured = std::max(c.measured, 2.0);

    c.note = "separation " + format_g17(sep) + "x at 10 tau; artifacts in " + dir.string();
    return c;
}

/// Criterion 10: resonance table exactness and branch consistency.
inline CriterionResult criterion_resonances() {
    CriterionResult c{"10", "resonance table consistency", 0.0, 1e-12, false, ""};
    const double epsilon = 0.01;
    const ModulationProfile prof = make_modulation(epsilon, 2.0);
    const auto table = resonance_table(prof, -5, 5);
    if (table.empty() || table.front().harmonic_order != 0 ||
        table.front().resonant_frequency != 2.0 ||
        table.front().bessel_argument_at_resonance != epsilon) {
        c.measured = 1.0;
        c.note = "l = 0 branch must rank first with Omega = 2, alpha = epsilon exactly";
        return c;
    }
    for (const ResonanceBranch& br : table) {
        if (!(br.resonant_frequency > 0.0)) {
            c.measured = 1.0;
            c.note = "non-positive Omega emitted";
            return c;
        }
        const double alt = 2.0 * epsilon / br.resonant_frequency;
        const double ref = std::abs(br.bessel_argument_at_resonance);
        const double denom = std::max(std::abs(ref), 1e-300);
        c.measured =
            std::max(c.measured, std::abs(std::abs(br.bessel_argument_at_resonance) - alt) /
                                     denom);
    }
    c.note = std::to_string(table.size()) + " physical branches, l in [-5, 5]";
    return c;
}

/// Run the whole suite (or a subset by id). Results report measured deviation
/// against the pinned gate; `corrupt_id` invalidates one gate as a harness
/// self-test.
inline std::vector<CriterionResult> run_validation(const ValidationOptions& opts = {},
                                                   const std::vector<std::string>& only = {}) {
    auto wanted = [&](const std::string& id) {
        if (only.empty()) return true;
        for (const std::string& o : only)
            if (o == id) return true;
        return false;
    };

    std::vector<CriterionResult> results;
    if (wanted("1a")) results.push_back(criterion_norm(1e4, 1e-4, "1a"));
    if (wanted("1b")) results.push_back(criterion_norm(1e6, 1e-6, "1b"));
    if (wanted("2")) results.push_back(criterion_fourier());
    if (wanted("3")) results.push_back(criterion_weak_evolution());
    if (wanted("4")) results.push_back(criterion_short_time());
    if (wanted("5")) results.push_back(criterion_weak_asymptote());
    if (wanted("6a")) results.push_back(criterion_series_oracle());
    if (wanted("6b")) results.push_back(criterion_general_asymptote());
    if (wanted("7a") || wanted("7b") || wanted("7c")) {
        const BogoliubovCriteria b = criterion_bogoliubov();
        if (wanted("7a")) results.push_back(b.rotating_wave);
        if (wanted("7b")) results.push_back(b.full_drive);
        if (wanted("7c")) results.push_back(b.unitarity);
    }
    if (wanted("8")) results.push_back(criterion_lossless_limit());
    if (wanted("9")) results.push_back(criterion_figure(opts.scratch_dir));
    if (wanted("10")) results.push_back(criterion_resonances());

    for (CriterionResult& c : results) {
        if (c.id == opts.corrupt_id) {
            c.tolerance = -1.0;   // self-test: no measurement can pass this gate
            c.note += (c.note.empty() ? "" : "; ") + std::string("tolerance corrupted");
        }
        c.pass = c.measured <= c.tolerance;
    }
    return results;
}

/// One pass/fail line per criterion.
inline std::string format_validation_report(const std::vector<CriterionResult>& results) {
    std::ostringstream out;
    for (const CriterionResult& c : results) {
        out << (c.pass ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.name
            << "  measured=" << format_g17(c.measured) << " tolerance=" << format_g17(c.tolerance);
        if (!c.note.empty()) out << "  (" << c.note << ")";
        out << '\n';
    }
    return out.str();
}

/// validate.json document.
inline std::string validation_json(const std::vector<CriterionResult>& results) {
    ordered_json j;
    j["version"] = kVersion;
    bool all = true;
    for (const CriterionResult& c : results) all = all && c.pass;
    j["all_pass"] = all;
    j["criteria"] = ordered_json::array();
    for (const CriterionResult& c : results)
        j["criteria"].push_back({{"id", c.id},
                                 {"name", c.name},
                                 {"pass", c.pass},
                                 {"measured", c.measured},
                                 {"tolerance", c.tolerance},
                                 {"note", c.note}});
    return j.dump(2) + "\n";
}

} // namespace dcesim
