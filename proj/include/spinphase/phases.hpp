#pragma once

#include "spinphase/dynamics.hpp"

namespace spinphase {

enum class Subsystem { A, B };
enum class DegeneracyPolicy { Error, Skip };

// total = arg<psi(0)|psi(tau)> in (-pi, pi];
// dynamic = i Int <psi|dpsi/dt> dt, unwrapped;
// geometric = total - dynamic reduced into (-pi, pi], with an unwrapped
// variant accumulated over trajectory prefixes.
struct PhaseBreakdown {
    double total = 0.0;
    double dynamic = 0.0;
    double geometric = 0.0;
    double geometric_unwrapped = 0.0;
};

// Eigenvalue weights and continuity-tracked eigenvector branches of a 2x2
// density-operator trajectory. Branch m is weights[m]/branches[m]; branches
// are matched between consecutive times by maximal overlap and phase-aligned
// so consecutive same-branch overlaps are real nonnegative. Points where the
// two weights come closer than the degeneracy tolerance are flagged, and the
// branch vectors there are carried forward frozen from the previous sample.
struct SpectralTrajectory {
    std::vector<double> times;
    std::array<std::vector<double>, 2> weights;
    std::array<std::vector<std::array<Complex, 2>>, 2> branches;
    std::vector<char> degeneracy_flags;
};

// Principal-value argument of <psi0|psiT>. Throws UndefinedPhaseError when the
// overlap magnitude is below 1e-10.
double total_phase(const PureState4& psi0, const PureState4& psiT);

// i Int <psi|dpsi/dt> dt = -Int <psi|H_lab(t)|psi> dt by composite Simpson
// quadrature on the trajectory grid (Simpson 3/8 closes an odd interval count).
double dynamic_phase(const Trajectory& traj);

// Finite-difference evaluation of the same integral, kept as a cross-check.
double dynamic_phase_fd(const Trajectory& traj);

PhaseBreakdown geometric_phase_pure(const Trajectory& traj);

// Pure-state kinematic phase from the state series alone:
// arg<psi_0|psi_N> - sum_i arg<psi_i|psi_{i+1}>. Exactly invariant under
// state-wise re-phasing with chi(0) = 0 (mod 2pi).
double geometric_phase_kinematic(const std::vector<PureState4>& states);

// Reduced 2x2 density operator of one spin.
ComplexMatrix partial_trace(const PureState4& psi, Subsystem which);

std::vector<ComplexMatrix> reduced_series(const Trajectory& traj, Subsystem which);

SpectralTrajectory eigen_trajectory(const std::vector<double>& times,
                                    const std::vector<ComplexMatrix>& rho,
                                    double degeneracy_tol = 1e-6);

// Mixed-state kinematic phase
//   arg sum_m sqrt(w_m(0) w_m(tau)) <phi_m(0)|phi_m(tau)> e^{-Int <phi_m|dphi_m/dt> dt},
// the per-branch integral evaluated as the accumulated arguments of consecutive
// overlaps. Interior degeneracy flags raise DegeneracyError unless the skip
// policy is selected.
double geometric_phase_mixed(const SpectralTrajectory& spec,
                             DegeneracyPolicy policy = DegeneracyPolicy::Error);

// Prefix series of the mixed phase over [0, t_i] for every grid point
// (used for per-row CSV output). gamma[0] = 0.
std::vector<double> mixed_phase_prefix_series(const SpectralTrajectory& spec,
                                              DegeneracyPolicy policy);

// Convenience: partial trace + eigen-branch tracking + mixed phase.
double subsystem_phase(const Trajectory& traj, Subsystem which,
                       double degeneracy_tol = 1e-6,
                       DegeneracyPolicy policy = DegeneracyPolicy::Error);

} // namespace spinphase
