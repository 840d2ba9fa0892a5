#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <vector>

#include "spinphase/angles.hpp"
#include "spinphase/entanglement.hpp"
#include "spinphase/oracles.hpp"

namespace spinphase::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path);
    return out;
}

// Builds the scenario trajectory, falling back to the rotating-frame
// exponential when the analytic mode basis is undefined (alpha = 0).
Trajectory scenario_trajectory(const ScenarioConfig& c, double t_final) {
    const PureState4 psi0 = normalized(initial_state(c));
    try {
        return make_trajectory(c.params, psi0, t_final, c.steps, c.propagator);
    } catch (const UndefinedBasisError&) {
        std::cerr << "note: alpha = 0, falling back to the expm propagator\n";
        return make_trajectory(c.params, psi0, t_final, c.steps, PropagatorKind::Expm);
    }
}

// Per-grid-point composite phase: wrapped and prefix-unwrapped values.
struct PurePhaseColumns {
    std::vector<double> wrapped;
    std::vector<double> unwrapped;
};

PurePhaseColumns pure_phase_columns(const Trajectory& traj) {
    const size_t n = traj.times.size();
    PurePhaseColumns cols;
    cols.wrapped.assign(n, 0.0);
    cols.unwrapped.assign(n, 0.0);

    const double dt = traj.times[1] - traj.times[0];
    double dyn = 0.0;
    double prev_energy = 0.0;
    double prev_unwrapped = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const ComplexMatrix h = hamiltonian_lab(traj.params, traj.times[i]);
        Complex acc = 0.0;
        for (int r = 0; r < 4; ++r)
            for (int s = 0; s < 4; ++s)
                acc += std::conj(traj.states[i].f[r]) * h(r, s) * traj.states[i].f[s];
        const double energy = acc.real();
        if (i > 0) dyn -= 0.5 * dt * (prev_energy + energy);
        prev_energy = energy;
        if (i == 0) continue;

        const Complex ov = inner(traj.states.front(), traj.states[i]);
        if (std::abs(ov) <= 1e-10) {
            cols.wrapped[i] = kNaN;
            cols.unwrapped[i] = kNaN;
            continue;
        }
        const double g = std::arg(ov) - dyn;
        cols.wrapped[i] = wrap_angle(g);
        cols.unwrapped[i] = prev_unwrapped + wrap_angle(g - prev_unwrapped);
        prev_unwrapped = cols.unwrapped[i];
    }
    return cols;
}

struct SubsystemColumns {
    std::vector<double> gamma;
    std::vector<char> flags;
};

SubsystemColumns subsystem_columns(const Trajectory& traj, Subsystem which,
                                   const ScenarioConfig& c) {
    const SpectralTrajectory spec = eigen_trajectory(
        traj.times, reduced_series(traj, which), tolerance(c, "degeneracy"));
    SubsystemColumns cols;
    cols.gamma = mixed_phase_prefix_series(spec, c.degeneracy_policy);
    cols.flags = spec.degeneracy_flags;
    return cols;
}

} // namespace

int cmd_simulate(const ScenarioConfig& config, const std::string& out_path) {
    const Trajectory traj = scenario_trajectory(config, config.t_final);
    const PurePhaseColumns ab = pure_phase_columns(traj);
    const SubsystemColumns a = subsystem_columns(traj, Subsystem::A, config);
    const SubsystemColumns b = subsystem_columns(traj, Subsystem::B, config);

    std::ofstream out = open_output(out_path);
    out << "t,f1_re,f1_im,f2_re,f2_im,f3_re,f3_im,f4_re,f4_im,"
           "gamma_ab_unwrapped,gamma_ab_wrapped,gamma_a,gamma_b,concurrence,degeneracy_flag\n";
    for (size_t i = 0; i < traj.times.size(); ++i) {
        out << fmt17(traj.times[i]);
        for (int k = 0; k < 4; ++k)
            out << "," << fmt17(traj.states[i].f[k].real()) << ","
                << fmt17(traj.states[i].f[k].imag());
        out << "," << fmt17(ab.unwrapped[i]) << "," << fmt17(ab.wrapped[i]);
        out << "," << fmt17(a.gamma[i]) << "," << fmt17(b.gamma[i]);
        out << "," << fmt17(concurrence(normalized(traj.states[i])));
        out << "," << ((a.flags[i] || b.flags[i]) ? 1 : 0) << "\n";
    }
    return kOk;
}

int cmd_verify(const CheckOptions& opts) {
    const std::vector<CheckResult> results = run_verification(opts);
    if (results.empty()) {
        std::cerr << "no checks match filter '" << opts.only << "'\n";
        return kUsageError;
    }
    bool all_pass = true;
    for (const CheckResult& r : results) {
        std::printf("%-38s max=%.3e  thr=%.1e  %s\n", r.name.c_str(), r.max_distance,
                    r.threshold, r.pass ? "PASS" : "FAIL");
        if (!r.detail.empty()) std::printf("    %s\n", r.detail.c_str());
        all_pass = all_pass && r.pass;
    }
    std::printf("%zu checks, %s\n", results.size(), all_pass ? "all passed" : "FAILURES present");
    return all_pass ? kOk : kCheckFailure;
}

int cmd_sweep(const ScenarioConfig& base, const std::string& axis, double lo, double hi,
              int count, const std::string& out_path) {
    if (count < 2) throw ConfigError("sweep count must be >= 2");
    if (axis != "B" && axis != "theta" && axis != "omega" && axis != "J" && axis != "t_final")
        throw ConfigError("sweep axis must be one of B, theta, omega, J, t_final");

    std::ofstream out = open_output(out_path);
    out << "axis,value,B,theta,omega,J,t_final,alpha,eta,"
           "gamma_ab_wrapped,gamma_ab_unwrapped,gamma_a,gamma_b,additivity_residual,"
           "concurrence\n";

    for (int i = 0; i < count; ++i) {
        const double value = lo + (hi - lo) * i / (count - 1);
        ScenarioConfig c = base;
        if (axis == "B") c.params.B = value;
        else if (axis == "theta") c.params.theta = value;
        else if (axis == "omega") c.params.omega = value;
        else if (axis == "J") c.params.J = value;
        else {
            if (!(value > 0.0)) throw ConfigError("sweep over t_final requires values > 0");
            c.t_final = value;
        }
        validate(c.params);

        double alpha = 0.0, eta = kNaN;
        try {
            const DerivedAngles ang = derived_angles(c.params);
            alpha = ang.alpha;
            eta = ang.eta;
        } catch (const UndefinedEtaError&) {
            // alpha = 0: leave eta as nan
        }

        const Trajectory traj = scenario_trajectory(c, c.t_final);
        const PurePhaseColumns ab = pure_phase_columns(traj);
        const SubsystemColumns a = subsystem_columns(traj, Subsystem::A, c);
        const SubsystemColumns b = subsystem_columns(traj, Subsystem::B, c);

        const double gab = ab.wrapped.back();
        const double ga = a.gamma.back();
        const double gb = b.gamma.back();
        const double residual = wrapped_distance(gab, ga + gb);
        const double conc = concurrence(normalized(traj.states.back()));

        out << axis << "," << fmt17(value) << "," << fmt17(c.params.B) << ","
            << fmt17(c.params.theta) << "," << fmt17(c.params.omega) << ","
            << fmt17(c.params.J) << "," << fmt17(c.t_final) << "," << fmt17(alpha) << ","
            << fmt17(eta) << "," << fmt17(gab) << "," << fmt17(ab.unwrapped.back()) << ","
            << fmt17(ga) << "," << fmt17(gb) << "," << fmt17(residual) << "," << fmt17(conc)
            << "\n";
    }
    return kOk;
}

int cmd_separability(const ScenarioConfig& config, const std::optional<std::string>& out_path,
                     BasisGauge gauge) {
    const PureState4 psi0 = normalized(initial_state(config));
    ModeCoefficients c;
    try {
        c = fit_coefficients(config.params, psi0, gauge);
    } catch (const UndefinedBasisError&) {
        std::cout << "classification unavailable: alpha = 0, the mode basis is undefined\n";
        return kNumericDomainError;
    }

    const double tol = tolerance(config, "separability");
    const SeparabilityReport rep = is_always_separable(c, tol, config.params.J, gauge);

    std::cout << "gauge: " << (gauge == BasisGauge::Standard ? "standard" : "psi3-pi") << "\n";
    std::cout << "coefficients:\n";
    for (int k = 0; k < 4; ++k)
        std::cout << "  c" << k + 1 << " = " << fmt17(c.c[k].real()) << " "
                  << (c.c[k].imag() < 0 ? "- " : "+ ") << fmt17(std::fabs(c.c[k].imag()))
                  << "i\n";
    std::cout << "residual |c1| = " << fmt17(rep.residual_c1) << "\n";
    std::cout << "residual |c2^2 " << (gauge == BasisGauge::Psi3Pi ? "-" : "+")
              << " 2 c3 c4| = " << fmt17(rep.residual_quadratic) << "\n";
    std::cout << "always_separable: " << (rep.always_separable ? "true" : "false") << "\n";
    std::cout << "cyclic_separable: " << (rep.cyclic_separable ? "true" : "false") << "\n";
    if (rep.recurrence_period)
        std::cout << "recurrence_period: " << fmt17(*rep.recurrence_period) << "\n";

    if (out_path) {
        std::ofstream out = open_output(*out_path);
        out << "t,concurrence\n";
        for (const auto& [t, conc] :
             separability_scan(config.params, psi0, config.t_final, config.steps + 1))
            out << fmt17(t) << "," << fmt17(conc) << "\n";
    }
    return kOk;
}

} // namespace spinphase::cli
