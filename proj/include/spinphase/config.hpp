#pragma once

#include <map>
#include <string>

#include "spinphase/phases.hpp"

namespace spinphase {

enum class InitialStateKind { Ket00, Ket01, Ket10, Ket11, Singlet, Custom };

// One simulation scenario, read from a flat key = value file.
// Keys: B, theta, omega, J, initial_state, amplitudes (re,im pairs, custom
// only), t_final, steps, propagator, degeneracy_policy, tol.<name>.
struct ScenarioConfig {
    ModelParams params{1.0, M_PI / 3, 0.5, 0.2};
    InitialStateKind initial_state = InitialStateKind::Ket01;
    std::array<Complex, 4> amplitudes{}; // used when initial_state == Custom
    // Default horizon stops short of the first reduced-state degeneracy of the
    // default scenario (pi/(8J) = 1.96), so a bare `simulate` runs clean under
    // the error policy.
    double t_final = 1.5;
    int steps = 1024;
    PropagatorKind propagator = PropagatorKind::Analytic;
    DegeneracyPolicy degeneracy_policy = DegeneracyPolicy::Error;
    std::map<std::string, double> tolerances = {{"degeneracy", 1e-6},
                                                {"separability", 1e-9}};
};

// Throws ConfigError with a line diagnostic on any malformed or unknown entry.
// Custom amplitudes within 1e-6 of unit norm are renormalized, anything else
// is rejected.
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig load_config(const std::string& path);

// Emits the flat file form; parse(serialize(c)) reproduces c exactly
// (numbers are printed with 17 significant digits).
std::string serialize_config(const ScenarioConfig& c);

PureState4 initial_state(const ScenarioConfig& c);
double tolerance(const ScenarioConfig& c, const std::string& name);

// Applies a "name=value" override to the tolerance map.
void apply_tolerance_override(ScenarioConfig& c, const std::string& name_value);

// Lossless decimal form of a double (17 significant digits, C locale).
std::string fmt17(double x);

} // namespace spinphase
