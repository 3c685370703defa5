#pragma once

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dcesim/config.hpp"
#include "dcesim/output.hpp"
#include "dcesim/photon_number.hpp"
#include "dcesim/svg.hpp"
#include "dcesim/validation.hpp"

// Subcommand drivers shared by the CLI binary and the in-process tests.
//
// Exit codes: 0 success, 1 validation-suite failure, 2 configuration error,
// 3 numerical failure. Computation errors additionally emit one machine-
// readable JSON record on stderr.

namespace dcesim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalError = 3;

namespace detail {

inline void emit_error_record(const std::string& type, const std::string& message) {
    ordered_json j;
    j["error"] = {{"type", type}, {"message", message}};
    std::cerr << j.dump() << '\n';
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        emit_error_record("config", e.what());
        return kExitConfigError;
    } catch (const ValidationError& e) {
        emit_error_record("validation", e.what());
        return kExitConfigError;
    } catch (const NumericalError& e) {
        emit_error_record("numerical", e.what());
        return kExitNumericalError;
    } catch (const IntegrationError& e) {
        emit_error_record("integration", e.what());
        return kExitNumericalError;
    } catch (const std::exception& e) {
        emit_error_record("internal", e.what());
        return kExitNumericalError;
    }
}

} // namespace detail

/// simulate: photon-number series as series.csv + series.json (+ series.svg).
inline int cmd_simulate(const RunConfig& cfg) {
    return detail::guarded([&] {
        const SimulationSetup setup = build_setup(cfg);
        const PhotonNumberSeries series = compute_series(
            setup.quasimode, setup.modulation, cfg.grid, cfg.methods, cfg.numerics);

        const std::filesystem::path dir(cfg.output.directory);
        atomic_write(dir / "series.csv", series_csv(series));
        atomic_write(dir / "series.json", series_json(series, setup, cfg));
        if (cfg.output.svg)
            atomic_write(dir / "series.svg",
                         series_svg(series, setup.modulation.coupling_rate,
                                    setup.quasimode.linewidth, cfg.output.timestamp));
        return kExitOk;
    });
}

/// sweep: one row of asymptotic quantities per parameter value; per-value
/// failures are recorded in-row without aborting the sweep.
inline int cmd_sweep(const RunConfig& base, const std::string& axis,
                     const std::vector<double>& values) {
    return detail::guarded([&] {
        if (values.empty()) throw ValidationError("values", "must be nonempty");
        if (axis != "epsilon" && axis != "Q" && axis != "Omega")
            throw ValidationError("axis", "must be one of epsilon, Q, Omega");

        std::ostringstream out;
        out << "axis,value,nu0,gamma,nu0_over_gamma,N_inf_weak,N_inf_general,t_sat_over_tau,"
               "error\n";
        for (double v : values) {
            RunConfig cfg = base;
            if (axis == "epsilon") cfg.epsilon = v;
            else if (axis == "Q") { cfg.quality_factor = v; cfg.linewidth.reset(); }
            else cfg.drive = format_g17(v);

            out << axis << ',' << format_g17(v) << ',';
            try {
                const SimulationSetup s = build_setup(cfg);
                const double nu0 = s.modulation.coupling_rate;
                const double gamma = s.quasimode.linewidth;
                out << format_g17(nu0) << ',' << format_g17(gamma) << ','
                    << format_g17(nu0 / gamma) << ','
                    << format_g17(asymptotic_pair_number(nu0, gamma, AsymptoticRegime::weak))
                    << ','
                    << format_g17(asymptotic_pair_number(nu0, gamma, AsymptoticRegime::general))
                    << ',' << format_g17(saturation_time_over_tau(nu0, gamma)) << ",\n";
            } catch (const std::exception& e) {
                std::string msg = e.what();
                for (char& ch : msg)
                    if (ch == ',' || ch == '\n') ch = ';';
                out << ",,,,,," << msg << '\n';
            }
        }
        atomic_write(std::filesystem::path(base.output.directory) / "sweep.csv", out.str());
        return kExitOk;
    });
}

/// resonances: the branch table as resonances.csv.
inline int cmd_resonances(const RunConfig& cfg, int l_min, int l_max) {
    return detail::guarded([&] {
        const SimulationSetup setup = build_setup(cfg);
        const auto table = resonance_table(setup.modulation, l_min, l_max);
        atomic_write(std::filesystem::path(cfg.output.directory) / "resonances.csv",
                     resonances_csv(table));
        return kExitOk;
    });
}

/// validate: run the verification suite, print the report, optionally write
/// validate.json. Exit 0 iff every criterion passes.
inline int cmd_validate(bool json_out, const std::string& out_dir,
                        const std::string& corrupt_id = "") {
    return detail::guarded([&] {
        ValidationOptions opts;
        opts.scratch_dir = (std::filesystem::path(out_dir) / "validate-artifacts").string();
        opts.corrupt_id = corrupt_id;
        const std::vector<CriterionResult> results = run_validation(opts);

        std::cout << format_validation_report(results);
        if (json_out)
            atomic_write(std::filesystem::path(out_dir) / "validate.json",
                         validation_json(results));

        for (const CriterionResult& c : results)
            if (!c.pass) {
                std::cerr << "validate: criterion " << c.id << " failed\n";
                return kExitValidationFailed;
            }
        return kExitOk;
    });
}

} // namespace dcesim
