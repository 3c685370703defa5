#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dcesim/config.hpp"
#include "dcesim/core.hpp"
#include "dcesim/modulation.hpp"
#include "dcesim/photon_number.hpp"

// Result persistence. All numbers are written with 17 significant digits so
// byte-level comparison of outputs across runs (and reproduction in other
// languages) is meaningful. Files are written to a temporary path and renamed,
// so on error an output file is either absent or complete.

namespace dcesim {

using ordered_json = nlohmann::ordered_json;

inline std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Write-to-temp-then-rename; creates parent directories as needed.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

/// series.csv: t, t_over_tau, then one column per method in canonical order.
inline std::string series_csv(const PhotonNumberSeries& series) {
    std::ostringstream out;
    out << "t,t_over_tau";
    for (const auto& [method, vals] : series.values) out << ',' << method_tag(method);
    out << '\n';
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        out << format_g17(series.times[i]) << ','
            << format_g17(series.times[i] * series.linewidth);
        for (const auto& [method, vals] : series.values) out << ',' << format_g17(vals[i]);
        out << '\n';
    }
    return out.str();
}

/// Pairwise column cross-checks: max relative difference per method pair.
inline ordered_json series_cross_checks(const PhotonNumberSeries& series) {
    ordered_json checks = ordered_json::object();
    for (auto a = series.values.begin(); a != series.values.end(); ++a) {
        for (auto b = std::next(a); b != series.values.end(); ++b) {
            double max_rel = 0.0;
            for (std::size_t i = 0; i < series.times.size(); ++i) {
                const double denom = std::max(std::abs(a->second[i]), std::abs(b->second[i]));
                if (denom > 0.0)
                    max_rel = std::max(max_rel, std::abs(a->second[i] - b->second[i]) / denom);
            }
            checks[method_tag(a->first) + "_vs_" + method_tag(b->first)] = max_rel;
        }
    }
    return checks;
}

/// series.json: parameters, tolerances, warnings, cross-checks, and the data.
inline std::string series_json(const PhotonNumberSeries& series, const SimulationSetup& setup,
                               const RunConfig& cfg) {
    ordered_json j;
    j["version"] = kVersion;
    j["parameters"] = {
        {"mode_index", setup.cavity.mode_index},
        {"cavity_length", setup.cavity.cavity_length},
        {"refractive_index_base", setup.cavity.refractive_index_base},
        {"omega0", setup.cavity.base_frequency},
        {"quality_factor", setup.quasimode.quality_factor},
        {"gamma", setup.quasimode.linewidth},
        {"tau", setup.quasimode.coherence_time},
        {"epsilon", setup.modulation.amplitude},
        {"Omega", setup.modulation.drive_frequency},
        {"nu0", setup.modulation.coupling_rate},
        {"alpha", setup.modulation.bessel_argument},
        {"nu0_over_gamma", setup.modulation.coupling_rate / setup.quasimode.linewidth},
    };
    j["tolerances"] = {
        {"quadrature_tol", cfg.numerics.quadrature_tol},
        {"cutoff", cfg.numerics.cutoff},
        {"ode_tol", cfg.numerics.ode_tol},
        {"l_max", cfg.numerics.l_max},
        {"n_max", cfg.numerics.n_max},
    };
    j["grid"] = {
        {"t_min_over_tau", cfg.grid.t_min_over_tau},
        {"t_max_over_tau", cfg.grid.t_max_over_tau},
        {"points", cfg.grid.points},
        {"spacing", cfg.grid.log_spacing ? "log" : "linear"},
    };
    j["saturation"] = {
        {"threshold", 0.99},   // t_sat convention: first t with N >= 0.99 N_inf
        {"t_sat_over_tau", saturation_time_over_tau(setup.modulation.coupling_rate,
                                                    setup.quasimode.linewidth)},
        {"N_inf_weak", asymptotic_pair_number(setup.modulation.coupling_rate,
                                              setup.quasimode.linewidth,
                                              AsymptoticRegime::weak)},
        {"N_inf_general", asymptotic_pair_number(setup.modulation.coupling_rate,
                                                 setup.quasimode.linewidth,
                                                 AsymptoticRegime::general)},
    };
    j["warnings"] = series.warnings;
    j["cross_checks"] = series_cross_checks(series);
    j["t"] = series.times;
    j["t_over_tau"] = ordered_json::array();
    for (double t : series.times) j["t_over_tau"].push_back(t * series.linewidth);
    for (const auto& [method, vals] : series.values) j[method_tag(method)] = vals;
    return j.dump(2) + "\n";
}

/// resonances.csv: l, sign, Omega_over_omega0, alpha, bessel_weight.
inline std::string resonances_csv(const std::vector<ResonanceBranch>& table) {
    std::ostringstream out;
    out << "l,sign,Omega_over_omega0,alpha,bessel_weight\n";
    for (const ResonanceBranch& br : table)
        out << br.harmonic_order << ',' << br.sign << ',' << format_g17(br.resonant_frequency)
            << ',' << format_g17(br.bessel_argument_at_resonance) << ','
            << format_g17(br.bessel_weight) << '\n';
    return out.str();
}

} // namespace dcesim
