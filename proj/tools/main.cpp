#include <CLI11.hpp>
#include <iostream>
#include <optional>

#include "commands.hpp"

using namespace spinphase;

namespace {

struct CommonOpts {
    std::string config_path;
    std::optional<int> steps;
    std::optional<std::string> propagator;
    std::vector<std::string> tol_overrides;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "scenario config file (key = value lines)");
    cmd->add_option("--steps", opts.steps, "override the grid step count (>= 16)");
    cmd->add_option("--propagator", opts.propagator, "analytic, expm or rk4")
        ->check(CLI::IsMember({"analytic", "expm", "rk4"}));
    cmd->add_option("--tol", opts.tol_overrides, "named tolerance override, name=value");
}

ScenarioConfig resolve_config(const CommonOpts& opts) {
    ScenarioConfig c =
        opts.config_path.empty() ? ScenarioConfig{} : load_config(opts.config_path);
    if (opts.steps) {
        if (*opts.steps < 16) throw ConfigError("steps must be >= 16");
        c.steps = *opts.steps;
    }
    if (opts.propagator) {
        if (*opts.propagator == "analytic") c.propagator = PropagatorKind::Analytic;
        else if (*opts.propagator == "expm") c.propagator = PropagatorKind::Expm;
        else c.propagator = PropagatorKind::Rk4;
    }
    for (const std::string& t : opts.tol_overrides) apply_tolerance_override(c, t);
    return c;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-spin rotating-field simulator: geometric phases, concurrence,"
                 " separability"};
    app.require_subcommand(1);

    CommonOpts sim_opts, sweep_opts, sep_opts;
    std::string sim_out = "simulate.csv";
    CLI::App* sim = app.add_subcommand("simulate", "propagate a scenario and write a CSV");
    add_common(sim, sim_opts);
    sim->add_option("--out", sim_out, "output CSV path");

    std::string only_filter;
    std::string inject;
    CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
    verify->add_option("--only", only_filter, "run only checks whose name contains this");
    verify->add_option("--inject-fault", inject,
                       "corrupt one propagation route (exchange-sign) as a self-test")
        ->check(CLI::IsMember({"exchange-sign"}));

    std::string sweep_axis, sweep_out = "sweep.csv";
    double sweep_lo = 0.0, sweep_hi = 1.0;
    int sweep_count = 2;
    CLI::App* sweep = app.add_subcommand("sweep", "scan one parameter, one CSV row per point");
    add_common(sweep, sweep_opts);
    sweep->add_option("--axis", sweep_axis, "B, theta, omega, J or t_final")->required();
    sweep->add_option("--min", sweep_lo, "axis start")->required();
    sweep->add_option("--max", sweep_hi, "axis end")->required();
    sweep->add_option("--count", sweep_count, "number of grid points (>= 2)")->required();
    sweep->add_option("--out", sweep_out, "output CSV path");

    std::optional<std::string> sep_out;
    std::string sep_gauge = "standard";
    CLI::App* sep = app.add_subcommand("separability",
                                       "classify the initial state against the"
                                       " separability condition");
    add_common(sep, sep_opts);
    sep->add_option("--out", sep_out, "optional CSV of concurrence over time");
    sep->add_option("--gauge", sep_gauge, "mode-basis phase convention")
        ->check(CLI::IsMember({"standard", "psi3-pi"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cli::kOk : cli::kUsageError;
    }

    try {
        if (sim->parsed()) return cli::cmd_simulate(resolve_config(sim_opts), sim_out);
        if (verify->parsed()) {
            CheckOptions opts;
            opts.only = only_filter;
            opts.inject_exchange_sign_flip = (inject == "exchange-sign");
            return cli::cmd_verify(opts);
        }
        if (sweep->parsed())
            return cli::cmd_sweep(resolve_config(sweep_opts), sweep_axis, sweep_lo, sweep_hi,
                                  sweep_count, sweep_out);
        if (sep->parsed())
            return cli::cmd_separability(resolve_config(sep_opts), sep_out,
                                         sep_gauge == "psi3-pi" ? BasisGauge::Psi3Pi
                                                                : BasisGauge::Standard);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return cli::kUsageError;
    } catch (const Error& e) {
        std::cerr << "numeric-domain error: " << e.what() << "\n";
        return cli::kNumericDomainError;
    }
    return cli::kUsageError;
}
