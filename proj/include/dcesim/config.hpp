#pragma once

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dcesim/core.hpp"

// Run configuration: a flat key = value document with optional sections,
// '#' comments, and strict unknown-key rejection.
//
//   [cavity]     mode_index, cavity_length, refractive_index_base
//   [quasimode]  Q | gamma                  (gamma in units of omega0)
//   [modulation] epsilon, drive             (drive = "l0" or Omega/omega0)
//   [grid]       t_min, t_max, points, spacing    (times in units of tau)
//   [numerics]   quadrature_tol, cutoff, ode_tol, l_max, n_max
//   [output]     directory, svg, timestamp
//
// `methods` is a top-level key (comma-separated method tags). Keys may appear
// without any section header; inside a section only that section's keys are
// accepted. Every field has a default, so an empty document is runnable.

namespace dcesim {

struct OutputOptions {
    std::string directory = ".";
    bool svg = false;
    bool timestamp = true;

    bool operator==(const OutputOptions&) const = default;
};

struct RunConfig {
    int mode_index = 1;
    double cavity_length = 2.0 * std::numbers::pi;   // omega0 = 1 with the defaults
    double refractive_index_base = 1.0;

    std::optional<double> quality_factor;   // default Q = 100 if neither is set
    std::optional<double> linewidth;        // exclusive with quality_factor

    double epsilon = 0.01;
    std::string drive = "l0";               // "l0" (Omega = 2 omega0) or a number

    TimeGrid grid;
    std::vector<Method> methods = {Method::quadrature, Method::closed_weak,
                                   Method::closed_general, Method::phenomenological};
    NumericsOptions numerics;
    OutputOptions output;

    bool operator==(const RunConfig&) const = default;
};

/// Everything the computation modules need, derived from a RunConfig.
struct SimulationSetup {
    CavityConfig cavity;
    QuasiMode quasimode;
    ModulationProfile modulation;
};

inline SimulationSetup build_setup(const RunConfig& cfg) {
    if (cfg.quality_factor && cfg.linewidth)
        throw ValidationError("quasimode", "give either Q or gamma, not both");

    SimulationSetup s{};
    s.cavity = make_cavity(cfg.mode_index, cfg.cavity_length, cfg.refractive_index_base);
    s.quasimode = cfg.linewidth ? make_quasimode_from_linewidth(s.cavity, *cfg.linewidth)
                                : make_quasimode(s.cavity, cfg.quality_factor.value_or(100.0));

    double omega_drive;
    if (cfg.drive == "l0") {
        omega_drive = 2.0;   // the l = 0 resonance Omega = 2 omega0
    } else {
        try {
            std::size_t pos = 0;
            omega_drive = std::stod(cfg.drive, &pos);
            if (pos != cfg.drive.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw ValidationError("drive", "expected 'l0' or a positive number, got '" +
                                               cfg.drive + "'");
        }
    }
    s.modulation = make_modulation(cfg.epsilon, omega_drive);
    return s;
}

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

inline double parse_double(const std::string& v, const std::string& key, int line) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected a number, got '" + v + "'", line);
    }
}

inline int parse_int(const std::string& v, const std::string& key, int line) {
    try {
        std::size_t pos = 0;
        const int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'", line);
    }
}

inline bool parse_bool(const std::string& v, const std::string& key, int line) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("key '" + key + "': expected true/false, got '" + v + "'", line);
}

} // namespace detail

/// Parse a configuration document. Unknown keys, unknown sections, keys in the
/// wrong section, and duplicate keys are errors.
inline RunConfig parse_config(const std::string& text) {
    RunConfig cfg;

    static const std::map<std::string, std::string> key_section = {
        {"mode_index", "cavity"},      {"cavity_length", "cavity"},
        {"refractive_index_base", "cavity"},
        {"Q", "quasimode"},            {"gamma", "quasimode"},
        {"epsilon", "modulation"},     {"drive", "modulation"},
        {"t_min", "grid"},             {"t_max", "grid"},
        {"points", "grid"},            {"spacing", "grid"},
        {"quadrature_tol", "numerics"},{"cutoff", "numerics"},
        {"ode_tol", "numerics"},       {"l_max", "numerics"},
        {"n_max", "numerics"},
        {"directory", "output"},       {"svg", "output"},
        {"timestamp", "output"},       {"methods", ""}};
    static const std::vector<std::string> sections = {"cavity", "quasimode", "modulation",
                                                      "grid",   "numerics",  "output"};

    std::string section;   // empty = top level
    std::map<std::string, int> seen;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = detail::trim(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
            section = detail::trim(line.substr(1, line.size() - 2));
            if (std::find(sections.begin(), sections.end(), section) == sections.end())
                throw ConfigError("unknown section [" + section + "]", line_no);
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value', got '" + line + "'", line_no);
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));

        const auto it = key_section.find(key);
        if (it == key_section.end()) throw ConfigError("unknown key '" + key + "'", line_no);
        if (!section.empty() && it->second != section)
            throw ConfigError("key '" + key + "' is not valid in section [" + section + "]",
                              line_no);
        if (auto [pos, inserted] = seen.emplace(key, line_no); !inserted)
            throw ConfigError("duplicate key '" + key + "' (first set on line " +
                                  std::to_string(pos->second) + ")",
                              line_no);

        if (key == "mode_index") cfg.mode_index = detail::parse_int(value, key, line_no);
        else if (key == "cavity_length") cfg.cavity_length = detail::parse_double(value, key, line_no);
        else if (key == "refractive_index_base")
            cfg.refractive_index_base = detail::parse_double(value, key, line_no);
        else if (key == "Q") cfg.quality_factor = detail::parse_double(value, key, line_no);
        else if (key == "gamma") cfg.linewidth = detail::parse_double(value, key, line_no);
        else if (key == "epsilon") cfg.epsilon = detail::parse_double(value, key, line_no);
        else if (key == "drive") cfg.drive = value;
        else if (key == "t_min") cfg.grid.t_min_over_tau = detail::parse_double(value, key, line_no);
        else if (key == "t_max") cfg.grid.t_max_over_tau = detail::parse_double(value, key, line_no);
        else if (key == "points") cfg.grid.points = detail::parse_int(value, key, line_no);
        else if (key == "spacing") {
            if (value == "log") cfg.grid.log_spacing = true;
            else if (value == "linear") cfg.grid.log_spacing = false;
            else throw ConfigError("key 'spacing': expected log or linear", line_no);
        }
        else if (key == "quadrature_tol")
            cfg.numerics.quadrature_tol = detail::parse_double(value, key, line_no);
        else if (key == "cutoff") cfg.numerics.cutoff = detail::parse_double(value, key, line_no);
        else if (key == "ode_tol") cfg.numerics.ode_tol = detail::parse_double(value, key, line_no);
        else if (key == "l_max") cfg.numerics.l_max = detail::parse_int(value, key, line_no);
        else if (key == "n_max") cfg.numerics.n_max = detail::parse_int(value, key, line_no);
        else if (key == "directory") cfg.output.directory = value;
        else if (key == "svg") cfg.output.svg = detail::parse_bool(value, key, line_no);
        else if (key == "timestamp") cfg.output.timestamp = detail::parse_bool(value, key, line_no);
        else if (key == "methods") {
            cfg.methods.clear();
            std::istringstream ms(value);
            std::string tag;
            while (std::getline(ms, tag, ',')) {
                tag = detail::trim(tag);
                if (!tag.empty()) cfg.methods.push_back(parse_method(tag));
            }
            if (cfg.methods.empty())
                throw ConfigError("key 'methods': must name at least one method", line_no);
        }
    }

    // Early validation of the fields with simple range constraints; the rest
    // is validated when the setup is built.
    if (cfg.epsilon >= 1.0 || cfg.epsilon < 0.0)
        throw ValidationError("epsilon", "must satisfy 0 <= epsilon < 1");
    if (cfg.quality_factor && !(*cfg.quality_factor > 0.0))
        throw ValidationError("Q", "must be positive");
    if (cfg.linewidth && !(*cfg.linewidth > 0.0))
        throw ValidationError("gamma", "must be positive");
    if (!cfg.quality_factor && !cfg.linewidth) cfg.quality_factor = 100.0;
    return cfg;
}

namespace detail {

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

/// Canonical text form; parse(serialize(cfg)) reproduces cfg field by field.
inline std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "methods = ";
    for (std::size_t i = 0; i < cfg.methods.size(); ++i)
        out << (i ? ", " : "") << method_tag(cfg.methods[i]);
    out << "\n\n[cavity]\n";
    out << "mode_index = " << cfg.mode_index << "\n";
    out << "cavity_length = " << detail::format_double(cfg.cavity_length) << "\n";
    out << "refractive_index_base = " << detail::format_double(cfg.refractive_index_base)
        << "\n";
    out << "\n[quasimode]\n";
    if (cfg.linewidth) out << "gamma = " << detail::format_double(*cfg.linewidth) << "\n";
    else out << "Q = " << detail::format_double(cfg.quality_factor.value_or(100.0)) << "\n";
    out << "\n[modulation]\n";
    out << "epsilon = " << detail::format_double(cfg.epsilon) << "\n";
    out << "drive = " << cfg.drive << "\n";
    out << "\n[grid]\n";
    out << "t_min = " << detail::format_double(cfg.grid.t_min_over_tau) << "\n";
    out << "t_max = " << detail::format_double(cfg.grid.t_max_over_tau) << "\n";
    out << "points = " << cfg.grid.points << "\n";
    out << "spacing = " << (cfg.grid.log_spacing ? "log" : "linear") << "\n";
    out << "\n[numerics]\n";
    out << "quadrature_tol = " << detail::format_double(cfg.numerics.quadrature_tol) << "\n";
    out << "cutoff = " << detail::format_double(cfg.numerics.cutoff) << "\n";
    out << "ode_tol = " << detail::format_double(cfg.numerics.ode_tol) << "\n";
    out << "l_max = " << cfg.numerics.l_max << "\n";
    out << "n_max = " << cfg.numerics.n_max << "\n";
    out << "\n[output]\n";
    out << "directory = " << cfg.output.directory << "\n";
    out << "svg = " << (cfg.output.svg ? "true" : "false") << "\n";
    out << "timestamp = " << (cfg.output.timestamp ? "true" : "false") << "\n";
    return out.str();
}

} // namespace dcesim
