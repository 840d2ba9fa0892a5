#pragma once

#include <optional>
#include <utility>

#include "spinphase/phases.hpp"

namespace spinphase {

// Classification of a mode-coefficient vector against the separability
// condition c1 = 0 and c2^2 + 2 c3 c4 = 0 (sign per the basis gauge).
struct SeparabilityReport {
    bool always_separable = false;
    double residual_c1 = 0.0;        // |c1|
    double residual_quadratic = 0.0; // |c2^2 +/- 2 c3 c4|
    bool cyclic_separable = false;   // |c2^2 +/- 2 c3 c4 - c1^2| < tol
    std::optional<double> recurrence_period; // pi / (4 |J|), when meaningful
};

// Pure-state concurrence sqrt(2 [1 - tr(rho_a^2)]). For a two-qubit pure state
// this reduces exactly to 2 |f1 f4 - f2 f3|, which is how it is evaluated: the
// naive purity difference squares the rounding error and could not certify the
// ~1e-10 separable-state thresholds.
double concurrence(const PureState4& psi);

// |c2^2 + 2 c3 c4 - c1^2 e^{i 8 J t}| (quadratic sign flipped under Psi3Pi).
double concurrence_closed_form(const ModeCoefficients& c, double J, double t,
                               BasisGauge gauge = BasisGauge::Standard);

SeparabilityReport is_always_separable(const ModeCoefficients& c, double tol, double J,
                                       BasisGauge gauge = BasisGauge::Standard);

// Numeric concurrence along the evolution on a uniform grid of `samples`
// points covering [0, t_final]. Propagates analytically when alpha > 0,
// through the rotating-frame exponential otherwise.
std::vector<std::pair<double, double>> separability_scan(const ModelParams& p,
                                                         const PureState4& psi0,
                                                         double t_final, int samples);

} // namespace spinphase
