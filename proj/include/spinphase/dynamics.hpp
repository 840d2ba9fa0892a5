#pragma once

#include <functional>
#include <vector>

#include "spinphase/model.hpp"

namespace spinphase {

// Phase convention for the four mode solutions. Standard is the convention the
// closed forms are written in; Psi3Pi re-phases mode 3 by pi, which turns the
// separability condition c2^2 + 2 c3 c4 = 0 into c2^2 - 2 c3 c4 = 0.
enum class BasisGauge { Standard, Psi3Pi };

// Characteristic frequencies: modes evolve as e^{i lambda_k t}.
// lambda = (3J, -J, -J + alpha, -J - alpha).
struct Spectrum {
    std::array<double, 4> lambda{};
};

// Expansion coefficients over the four mode solutions, unit 2-norm.
struct ModeCoefficients {
    std::array<Complex, 4> c{};
};

// Uniformly sampled evolution. States are the raw integrator output (analytic
// and exponential propagation are unitary to rounding; RK4 drifts slightly and
// the drift is recorded rather than hidden by renormalization).
struct Trajectory {
    std::vector<double> times;
    std::vector<PureState4> states;
    ModelParams params;
    double max_norm_drift = 0.0; // max |norm - 1| over the grid
};

Spectrum characteristic_frequencies(const ModelParams& p);

// Mode solution k (1..4) at time t. Throws UndefinedBasisError at alpha = 0.
PureState4 basis_solution(const ModelParams& p, int k, double t,
                          BasisGauge gauge = BasisGauge::Standard);

// c_k = <psi_k(0)|psi0>. The t = 0 modes are orthonormal, so this is exact.
ModeCoefficients fit_coefficients(const ModelParams& p, const PureState4& psi0,
                                  BasisGauge gauge = BasisGauge::Standard);

// Sum_k c_k |psi_k(t)>.
PureState4 propagate_analytic(const ModelParams& p, const ModeCoefficients& c, double t,
                              BasisGauge gauge = BasisGauge::Standard);

// Exact propagation through the rotating frame: works at alpha = 0 too.
PureState4 propagate_expm(const ModelParams& p, const PureState4& psi0, double t);

// Matrix-valued time-dependent generator, used by the RK4 integrator.
using HamiltonianFn = std::function<ComplexMatrix(double)>;

// Classical fixed-step RK4 on i df/dt = H_lab(t) f.
Trajectory propagate_rk4(const ModelParams& p, const PureState4& psi0, double t_final,
                         int steps);
// Same integrator with a caller-supplied generator (used for fault injection
// in the verification suite and for integrator tests).
Trajectory propagate_rk4(const ModelParams& p, const HamiltonianFn& h, const PureState4& psi0,
                         double t_final, int steps);

enum class PropagatorKind { Analytic, Expm, Rk4 };

// Uniform grid of steps+1 samples on [0, t_final] produced by the chosen
// propagator. The Expm route eigendecomposes the rotating-frame generator once.
Trajectory make_trajectory(const ModelParams& p, const PureState4& psi0, double t_final,
                           int steps, PropagatorKind kind,
                           BasisGauge gauge = BasisGauge::Standard);

} // namespace spinphase
