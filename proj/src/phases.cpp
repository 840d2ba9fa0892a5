#include "spinphase/phases.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spinphase/angles.hpp"

namespace spinphase {

double total_phase(const PureState4& psi0, const PureState4& psiT) {
    const Complex ov = inner(psi0, psiT);
    if (std::abs(ov) <= 1e-10)
        throw UndefinedPhaseError("total phase undefined: endpoint overlap magnitude " +
                                  std::to_string(std::abs(ov)));
    return std::arg(ov);
}

namespace {

// <psi|H_lab(t)|psi> along the trajectory.
std::vector<double> energy_series(const Trajectory& traj) {
    std::vector<double> e(traj.times.size());
    for (size_t i = 0; i < traj.times.size(); ++i) {
        const ComplexMatrix h = hamiltonian_lab(traj.params, traj.times[i]);
        Complex acc = 0.0;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                acc += std::conj(traj.states[i].f[r]) * h(r, c) * traj.states[i].f[c];
        e[i] = acc.real();
    }
    return e;
}

// Composite Simpson with a 3/8 tail when the interval count is odd.
double simpson(const std::vector<double>& y, double dt) {
    const size_t n = y.size() - 1; // interval count
    double s = 0.0;
    size_t even_end = (n % 2 == 0) ? n : n - 3;
    for (size_t i = 0; i + 2 <= even_end; i += 2)
        s += dt / 3.0 * (y[i] + 4.0 * y[i + 1] + y[i + 2]);
    if (n % 2 != 0) {
        const size_t i = n - 3;
        s += 3.0 * dt / 8.0 * (y[i] + 3.0 * y[i + 1] + 3.0 * y[i + 2] + y[i + 3]);
    }
    return s;
}

} // namespace

double dynamic_phase(const Trajectory& traj) {
    if (traj.times.size() < 3)
        throw ResolutionError("dynamic_phase: need at least 3 grid points");
    const std::vector<double> e = energy_series(traj);
    const double dt = traj.times[1] - traj.times[0];
    return -simpson(e, dt);
}

double dynamic_phase_fd(const Trajectory& traj) {
    const size_t n = traj.times.size();
    if (n < 3) throw ResolutionError("dynamic_phase_fd: need at least 3 grid points");
    const double dt = traj.times[1] - traj.times[0];
    // i <psi|dpsi/dt> with central differences in the interior.
    std::vector<double> g(n);
    for (size_t i = 0; i < n; ++i) {
        PureState4 dpsi;
        if (i == 0) {
            for (int k = 0; k < 4; ++k)
                dpsi.f[k] = (-3.0 * traj.states[0].f[k] + 4.0 * traj.states[1].f[k] -
                             traj.states[2].f[k]) /
                            (2.0 * dt);
        } else if (i == n - 1) {
            for (int k = 0; k < 4; ++k)
                dpsi.f[k] = (3.0 * traj.states[i].f[k] - 4.0 * traj.states[i - 1].f[k] +
                             traj.states[i - 2].f[k]) /
                            (2.0 * dt);
        } else {
            for (int k = 0; k < 4; ++k)
                dpsi.f[k] = (traj.states[i + 1].f[k] - traj.states[i - 1].f[k]) / (2.0 * dt);
        }
        g[i] = (Complex(0.0, 1.0) * inner(traj.states[i], dpsi)).real();
    }
    // i <psi|psi_dot> integrates to +Int <H>, the negative of the dynamic phase.
    return -simpson(g, dt);
}

PhaseBreakdown geometric_phase_pure(const Trajectory& traj) {
    const size_t n = traj.times.size();
    if (n < 3) throw ResolutionError("geometric_phase_pure: need at least 3 grid points");

    PhaseBreakdown out;
    out.total = total_phase(traj.states.front(), traj.states.back());
    out.dynamic = dynamic_phase(traj);
    out.geometric = wrap_angle(out.total - out.dynamic);

    // Winding count from the prefix series: cumulative-trapezoid dynamic phase
    // is accurate enough to locate the 2pi branch of the final value.
    const std::vector<double> e = energy_series(traj);
    const double dt = traj.times[1] - traj.times[0];
    double dyn_prefix = 0.0;
    double unwrapped = 0.0;
    double prev = 0.0;
    for (size_t i = 1; i < n; ++i) {
        dyn_prefix -= 0.5 * dt * (e[i - 1] + e[i]);
        const Complex ov = inner(traj.states.front(), traj.states[i]);
        if (std::abs(ov) <= 1e-10) continue; // skip ill-defined prefix points
        const double g = std::arg(ov) - dyn_prefix;
        unwrapped = prev + wrap_angle(g - prev);
        prev = unwrapped;
    }
    // Snap the unwrapped value onto the Simpson-accurate branch representative.
    out.geometric_unwrapped =
        out.geometric + 2.0 * M_PI * std::round((unwrapped - out.geometric) / (2.0 * M_PI));
    return out;
}

double geometric_phase_kinematic(const std::vector<PureState4>& states) {
    if (states.size() < 2) throw ResolutionError("geometric_phase_kinematic: too few states");
    const Complex total = inner(states.front(), states.back());
    if (std::abs(total) <= 1e-10)
        throw UndefinedPhaseError("kinematic phase undefined: endpoint overlap vanishes");
    double conn = 0.0;
    for (size_t i = 0; i + 1 < states.size(); ++i) {
        const Complex step = inner(states[i], states[i + 1]);
        if (std::abs(step) <= 1e-12)
            throw ResolutionError("geometric_phase_kinematic: consecutive states orthogonal");
        conn += std::arg(step);
    }
    return wrap_angle(std::arg(total) - conn);
}

ComplexMatrix partial_trace(const PureState4& psi, Subsystem which) {
    ComplexMatrix rho(2, 2);
    // Amplitude index = 2*i + j for |i>_a |j>_b.
    if (which == Subsystem::A) {
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k)
                for (int j = 0; j < 2; ++j)
                    rho(i, k) += psi.f[2 * i + j] * std::conj(psi.f[2 * k + j]);
    } else {
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int i = 0; i < 2; ++i)
                    rho(j, k) += psi.f[2 * i + j] * std::conj(psi.f[2 * i + k]);
    }
    return rho;
}

std::vector<ComplexMatrix> reduced_series(const Trajectory& traj, Subsystem which) {
    std::vector<ComplexMatrix> rho;
    rho.reserve(traj.states.size());
    for (const PureState4& s : traj.states) rho.push_back(partial_trace(s, which));
    return rho;
}

namespace {

std::array<double, 3> bloch_vector(const ComplexMatrix& rho) {
    return {2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(),
            (rho(0, 0) - rho(1, 1)).real()};
}

Complex overlap2(const std::array<Complex, 2>& x, const std::array<Complex, 2>& y) {
    return std::conj(x[0]) * y[0] + std::conj(x[1]) * y[1];
}

} // namespace

SpectralTrajectory eigen_trajectory(const std::vector<double>& times,
                                    const std::vector<ComplexMatrix>& rho,
                                    double degeneracy_tol) {
    if (times.size() != rho.size() || times.empty())
        throw Error("eigen_trajectory: times and density series must match and be nonempty");

    const size_t n = times.size();
    SpectralTrajectory spec;
    spec.times = times;
    spec.degeneracy_flags.assign(n, 0);
    for (int m = 0; m < 2; ++m) {
        spec.weights[m].resize(n);
        spec.branches[m].resize(n);
    }

    // Grid check on the Bloch direction. A sign reversal between samples with
    // the eigenvector line nearly unchanged is a degeneracy crossing that fell
    // between grid points: flag it. A reversal with a large line rotation (or
    // any rotation beyond pi/2 of well-separated directions) means the grid is
    // too coarse for the dynamics.
    std::vector<char> crossing(n, 0);
    for (size_t i = 0; i + 1 < n; ++i) {
        const auto b0 = bloch_vector(rho[i]);
        const auto b1 = bloch_vector(rho[i + 1]);
        const double r0 = std::sqrt(b0[0] * b0[0] + b0[1] * b0[1] + b0[2] * b0[2]);
        const double r1 = std::sqrt(b1[0] * b1[0] + b1[1] * b1[1] + b1[2] * b1[2]);
        if (r0 < degeneracy_tol || r1 < degeneracy_tol) continue;
        const double dot = b0[0] * b1[0] + b0[1] * b1[1] + b0[2] * b1[2];
        if (dot >= 0.0) continue;
        const double line_cos = -dot / (r0 * r1); // cosine of the line angle
        if (line_cos > std::cos(M_PI / 4)) {
            crossing[r0 < r1 ? i : i + 1] = 1;
        } else {
            throw ResolutionError("eigen_trajectory: Bloch vector rotates more than pi/2 on [" +
                                  std::to_string(times[i]) + ", " + std::to_string(times[i + 1]) +
                                  "]");
        }
    }

    for (size_t i = 0; i < n; ++i) {
        const EigenSystem es = eig_hermitian(rho[i]);
        // Density-operator eigenvalues; rounding can push them a hair outside [0, 1].
        std::array<double, 2> w = {std::clamp(es.eigenvalues[0], 0.0, 1.0),
                                   std::clamp(es.eigenvalues[1], 0.0, 1.0)};
        std::array<std::array<Complex, 2>, 2> v;
        for (int m = 0; m < 2; ++m) v[m] = {es.vectors(0, m), es.vectors(1, m)};

        // Freeze branches only where the gap itself is unresolved; a crossing
        // flag alone still carries trustworthy directions at the sample.
        const bool degenerate = std::fabs(w[0] - w[1]) < degeneracy_tol;
        spec.degeneracy_flags[i] = (degenerate || crossing[i]) ? 1 : 0;

        if (i == 0) {
            for (int m = 0; m < 2; ++m) {
                spec.weights[m][0] = w[m];
                spec.branches[m][0] = v[m];
            }
            continue;
        }
        if (degenerate) {
            // Carry the previous branch vectors through; weights are both ~1/2.
            for (int m = 0; m < 2; ++m) {
                spec.branches[m][i] = spec.branches[m][i - 1];
                spec.weights[m][i] = w[m];
            }
            continue;
        }
        // Match branches to the previous sample by maximal overlap.
        const double keep = std::abs(overlap2(spec.branches[0][i - 1], v[0]));
        const double swap = std::abs(overlap2(spec.branches[0][i - 1], v[1]));
        if (swap > keep) {
            std::swap(v[0], v[1]);
            std::swap(w[0], w[1]);
        }
        // Phase-align each branch against its predecessor so the consecutive
        // overlap is real nonnegative.
        for (int m = 0; m < 2; ++m) {
            const Complex ov = overlap2(spec.branches[m][i - 1], v[m]);
            const double mag = std::abs(ov);
            if (mag > 1e-12) {
                const Complex ph = std::conj(ov) / mag;
                v[m][0] *= ph;
                v[m][1] *= ph;
            }
            spec.branches[m][i] = v[m];
            spec.weights[m][i] = w[m];
        }
    }
    return spec;
}

namespace {

Complex mixed_phase_sum(const SpectralTrajectory& spec, size_t upto,
                        const std::array<double, 2>& conn) {
    Complex total = 0.0;
    for (int m = 0; m < 2; ++m) {
        const double w = std::sqrt(spec.weights[m][0] * spec.weights[m][upto]);
        if (w <= 0.0) continue;
        const Complex ov = overlap2(spec.branches[m][0], spec.branches[m][upto]);
        total += w * ov * std::exp(Complex(0.0, -conn[m]));
    }
    return total;
}

void check_policy(const SpectralTrajectory& spec, DegeneracyPolicy policy) {
    if (policy == DegeneracyPolicy::Skip) return;
    for (size_t i = 1; i + 1 < spec.times.size(); ++i)
        if (spec.degeneracy_flags[i])
            throw DegeneracyError("degenerate density operator at t = " +
                                  std::to_string(spec.times[i]) +
                                  " (enable the skip policy to continue through it)");
}

} // namespace

double geometric_phase_mixed(const SpectralTrajectory& spec, DegeneracyPolicy policy) {
    const size_t n = spec.times.size();
    if (n < 2) throw ResolutionError("geometric_phase_mixed: too few grid points");
    check_policy(spec, policy);

    std::array<double, 2> conn = {0.0, 0.0};
    for (int m = 0; m < 2; ++m)
        for (size_t i = 0; i + 1 < n; ++i) {
            const Complex step = overlap2(spec.branches[m][i], spec.branches[m][i + 1]);
            if (std::abs(step) > 1e-12) conn[m] += std::arg(step);
        }
    const Complex total = mixed_phase_sum(spec, n - 1, conn);
    if (std::abs(total) <= 1e-12)
        throw UndefinedPhaseError("mixed phase undefined: weighted overlap sum vanishes");
    return std::arg(total);
}

std::vector<double> mixed_phase_prefix_series(const SpectralTrajectory& spec,
                                              DegeneracyPolicy policy) {
    const size_t n = spec.times.size();
    check_policy(spec, policy);
    std::vector<double> gamma(n, 0.0);
    std::array<double, 2> conn = {0.0, 0.0};
    for (size_t i = 1; i < n; ++i) {
        for (int m = 0; m < 2; ++m) {
            const Complex step = overlap2(spec.branches[m][i - 1], spec.branches[m][i]);
            if (std::abs(step) > 1e-12) conn[m] += std::arg(step);
        }
        const Complex total = mixed_phase_sum(spec, i, conn);
        gamma[i] = (std::abs(total) > 1e-12) ? std::arg(total)
                                             : std::numeric_limits<double>::quiet_NaN();
    }
    return gamma;
}

double subsystem_phase(const Trajectory& traj, Subsystem which, double degeneracy_tol,
                       DegeneracyPolicy policy) {
    const SpectralTrajectory spec =
        eigen_trajectory(traj.times, reduced_series(traj, which), degeneracy_tol);
    return geometric_phase_mixed(spec, policy);
}

} // namespace spinphase
