// dcesim: photon-pair creation from vacuum in a lossy modulated cavity.
//
// Subcommands:
//   simulate    photon-number series over a time grid (CSV/JSON/SVG)
//   sweep       asymptotic pair numbers across a parameter axis (CSV)
//   resonances  drive-frequency resonance table (CSV)
//   validate    built-in verification suite

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dcesim/commands.hpp"
#include "dcesim/config.hpp"

namespace {

struct CommonFlags {
    std::string config_file;
    std::optional<double> epsilon, Q, gamma, t_min, t_max, quadrature_tol, cutoff, ode_tol;
    std::optional<int> points, l_max, n_max;
    std::optional<std::string> drive, spacing, methods, out_dir;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_file, "configuration file (key = value)");
    cmd->add_option("--epsilon", f.epsilon, "modulation amplitude");
    cmd->add_option("--Q", f.Q, "quality factor");
    cmd->add_option("--gamma", f.gamma, "linewidth in units of omega0 (alternative to --Q)");
    cmd->add_option("--drive", f.drive, "drive frequency: 'l0' or Omega/omega0");
    cmd->add_option("--t-min", f.t_min, "grid start, units of tau");
    cmd->add_option("--t-max", f.t_max, "grid end, units of tau");
    cmd->add_option("--points", f.points, "grid points");
    cmd->add_option("--spacing", f.spacing, "grid spacing: log or linear");
    cmd->add_option("--methods", f.methods, "comma list of method tags");
    cmd->add_option("--quad-tol", f.quadrature_tol, "quadrature relative tolerance");
    cmd->add_option("--cutoff", f.cutoff, "window cutoff K");
    cmd->add_option("--ode-tol", f.ode_tol, "ODE local relative tolerance");
    cmd->add_option("--l-max", f.l_max, "Bessel series truncation");
    cmd->add_option("--n-max", f.n_max, "sinh^2 series truncation");
    cmd->add_option("--out", f.out_dir, "output directory");
}

dcesim::RunConfig resolve_config(const CommonFlags& f) {
    dcesim::RunConfig cfg;
    if (!f.config_file.empty()) {
        std::ifstream in(f.config_file);
        if (!in) throw dcesim::ConfigError("cannot open config file " + f.config_file);
        std::ostringstream text;
        text << in.rdbuf();
        cfg = dcesim::parse_config(text.str());
    }
    if (f.epsilon) cfg.epsilon = *f.epsilon;
    if (f.Q) { cfg.quality_factor = *f.Q; cfg.linewidth.reset(); }
    if (f.gamma) { cfg.linewidth = *f.gamma; cfg.quality_factor.reset(); }
    if (f.drive) cfg.drive = *f.drive;
    if (f.t_min) cfg.grid.t_min_over_tau = *f.t_min;
    if (f.t_max) cfg.grid.t_max_over_tau = *f.t_max;
    if (f.points) cfg.grid.points = *f.points;
    if (f.spacing) {
        if (*f.spacing == "log") cfg.grid.log_spacing = true;
        else if (*f.spacing == "linear") cfg.grid.log_spacing = false;
        else throw dcesim::ConfigError("--spacing: expected log or linear");
    }
    if (f.methods) {
        cfg.methods.clear();
        std::istringstream ms(*f.methods);
        std::string tag;
        while (std::getline(ms, tag, ','))
            if (!tag.empty()) cfg.methods.push_back(dcesim::parse_method(tag));
    }
    if (f.quadrature_tol) cfg.numerics.quadrature_tol = *f.quadrature_tol;
    if (f.cutoff) cfg.numerics.cutoff = *f.cutoff;
    if (f.ode_tol) cfg.numerics.ode_tol = *f.ode_tol;
    if (f.l_max) cfg.numerics.l_max = *f.l_max;
    if (f.n_max) cfg.numerics.n_max = *f.n_max;
    if (f.out_dir) cfg.output.directory = *f.out_dir;
    return cfg;
}

std::vector<double> parse_value_list(const std::string& csv) {
    std::vector<double> values;
    std::istringstream in(csv);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t pos = 0;
            values.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw dcesim::ConfigError("--values: '" + item + "' is not a number");
        }
    }
    return values;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"photon-pair creation in a lossy cavity with a modulated refractive index"};
    app.require_subcommand(1);

    CommonFlags sim_flags, sweep_flags, res_flags;
    bool svg = false, no_timestamp = false;

    CLI::App* simulate = app.add_subcommand("simulate", "compute a photon-number series");
    add_common(simulate, sim_flags);
    simulate->add_flag("--svg", svg, "also emit series.svg");
    simulate->add_flag("--no-timestamp", no_timestamp, "suppress the SVG timestamp comment");

    std::string axis, values_csv;
    CLI::App* sweep = app.add_subcommand("sweep", "sweep a parameter axis");
    add_common(sweep, sweep_flags);
    sweep->add_option("--axis", axis, "epsilon, Q, or Omega")->required();
    sweep->add_option("--values", values_csv, "comma-separated values")->required();

    int l_min = -5, l_max_range = 5;
    CLI::App* resonances = app.add_subcommand("resonances", "emit the resonance table");
    add_common(resonances, res_flags);
    resonances->add_option("--lmin", l_min, "lowest harmonic order");
    resonances->add_option("--lmax", l_max_range, "highest harmonic order");

    bool validate_json = false;
    std::string validate_out = ".", corrupt_id;
    CLI::App* validate = app.add_subcommand("validate", "run the verification suite");
    validate->add_flag("--json", validate_json, "write validate.json");
    validate->add_option("--out", validate_out, "output directory");
    validate->add_option("--corrupt", corrupt_id, "self-test: invalidate one criterion gate")
        ->group("");   // hidden

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            dcesim::RunConfig cfg = resolve_config(sim_flags);
            if (svg) cfg.output.svg = true;
            if (no_timestamp) cfg.output.timestamp = false;
            return dcesim::cmd_simulate(cfg);
        }
        if (sweep->parsed()) {
            const dcesim::RunConfig cfg = resolve_config(sweep_flags);
            return dcesim::cmd_sweep(cfg, axis, parse_value_list(values_csv));
        }
        if (resonances->parsed()) {
            const dcesim::RunConfig cfg = resolve_config(res_flags);
            return dcesim::cmd_resonances(cfg, l_min, l_max_range);
        }
        if (validate->parsed()) return dcesim::cmd_validate(validate_json, validate_out, corrupt_id);
    } catch (const dcesim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return dcesim::kExitConfigError;
    } catch (const dcesim::ValidationError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return dcesim::kExitConfigError;
    }
    return dcesim::kExitOk;
}
