#include "spinphase/dynamics.hpp"

#include <cmath>

namespace spinphase {

Spectrum characteristic_frequencies(const ModelParams& p) {
    const double alpha = std::hypot(2.0 * p.B * std::sin(p.theta),
                                    2.0 * p.B * std::cos(p.theta) - p.omega);
    return Spectrum{{3.0 * p.J, -p.J, -p.J + alpha, -p.J - alpha}};
}

PureState4 basis_solution(const ModelParams& p, int k, double t, BasisGauge gauge) {
    if (k < 1 || k > 4) throw Error("basis_solution: mode index must be 1..4");

    DerivedAngles ang;
    try {
        ang = derived_angles(p);
    } catch (const UndefinedEtaError&) {
        throw UndefinedBasisError();
    }
    const double se = std::sin(ang.eta);
    const double ce = std::cos(ang.eta);
    const double sh2 = std::sin(ang.eta / 2) * std::sin(ang.eta / 2);
    const double ch2 = std::cos(ang.eta / 2) * std::cos(ang.eta / 2);
    const Spectrum sp = characteristic_frequencies(p);
    const Complex mode_phase = std::exp(Complex(0.0, sp.lambda[k - 1] * t));
    const Complex em = std::exp(Complex(0.0, -p.omega * t));
    const Complex ep = std::conj(em);
    const double r2 = 1.0 / std::sqrt(2.0);

    PureState4 s;
    switch (k) {
    case 1:
        s.f = {0.0, Complex(r2), Complex(-r2), 0.0};
        break;
    case 2:
        s.f = {-r2 * se * em, Complex(r2 * ce), Complex(r2 * ce), r2 * se * ep};
        break;
    case 3:
        s.f = {-sh2 * em, Complex(se / 2), Complex(se / 2), -ch2 * ep};
        break;
    case 4:
        s.f = {ch2 * em, Complex(se / 2), Complex(se / 2), sh2 * ep};
        break;
    }
    for (Complex& z : s.f) z *= mode_phase;
    if (gauge == BasisGauge::Psi3Pi && k == 3)
        for (Complex& z : s.f) z = -z;
    return s;
}

ModeCoefficients fit_coefficients(const ModelParams& p, const PureState4& psi0,
                                  BasisGauge gauge) {
    if (std::fabs(psi0.norm() - 1.0) > 1e-6)
        throw Error("fit_coefficients: initial state is not normalized");
    ModeCoefficients mc;
    for (int k = 1; k <= 4; ++k) mc.c[k - 1] = inner(basis_solution(p, k, 0.0, gauge), psi0);
    return mc;
}

PureState4 propagate_analytic(const ModelParams& p, const ModeCoefficients& c, double t,
                              BasisGauge gauge) {
    PureState4 s;
    for (int k = 1; k <= 4; ++k) {
        const PureState4 mode = basis_solution(p, k, t, gauge);
        for (int i = 0; i < 4; ++i) s.f[i] += c.c[k - 1] * mode.f[i];
    }
    return s;
}

namespace {

// Rotating-frame propagator with the eigendecomposition done once.
class RotatingFramePropagator {
public:
    explicit RotatingFramePropagator(const ModelParams& p)
        : p_(p), es_(eig_hermitian(hamiltonian_rotating(p))) {}

    PureState4 at(const PureState4& psi0, double t) const {
        // psi0 already is the rotating-frame state at t = 0.
        std::array<Complex, 4> proj{};
        for (int k = 0; k < 4; ++k)
            for (int i = 0; i < 4; ++i) proj[k] += std::conj(es_.vectors(i, k)) * psi0.f[i];
        PureState4 fbar;
        for (int k = 0; k < 4; ++k) {
            const Complex ph = std::exp(Complex(0.0, -es_.eigenvalues[k] * t)) * proj[k];
            for (int i = 0; i < 4; ++i) fbar.f[i] += es_.vectors(i, k) * ph;
        }
        return lab_from_rotating(fbar, p_.omega, t);
    }

private:
    ModelParams p_;
    EigenSystem es_;
};

PureState4 rk4_step(const HamiltonianFn& h, const PureState4& y, double t, double dt) {
    auto deriv = [&](const ComplexMatrix& ht, const PureState4& s) {
        PureState4 d;
        for (int i = 0; i < 4; ++i) {
            Complex acc = 0.0;
            for (int j = 0; j < 4; ++j) acc += ht(i, j) * s.f[j];
            d.f[i] = Complex(0.0, -1.0) * acc;
        }
        return d;
    };
    const ComplexMatrix h0 = h(t);
    const ComplexMatrix h1 = h(t + dt / 2);
    const ComplexMatrix h2 = h(t + dt);

    const PureState4 k1 = deriv(h0, y);
    PureState4 tmp;
    for (int i = 0; i < 4; ++i) tmp.f[i] = y.f[i] + 0.5 * dt * k1.f[i];
    const PureState4 k2 = deriv(h1, tmp);
    for (int i = 0; i < 4; ++i) tmp.f[i] = y.f[i] + 0.5 * dt * k2.f[i];
    const PureState4 k3 = deriv(h1, tmp);
    for (int i = 0; i < 4; ++i) tmp.f[i] = y.f[i] + dt * k3.f[i];
    const PureState4 k4 = deriv(h2, tmp);

    PureState4 next;
    for (int i = 0; i < 4; ++i)
        next.f[i] = y.f[i] + dt / 6.0 * (k1.f[i] + 2.0 * k2.f[i] + 2.0 * k3.f[i] + k4.f[i]);
    return next;
}

} // namespace

PureState4 propagate_expm(const ModelParams& p, const PureState4& psi0, double t) {
    if (std::fabs(psi0.norm() - 1.0) > 1e-6)
        throw Error("propagate_expm: initial state is not normalized");
    const ComplexMatrix u = expm_i_hermitian(hamiltonian_rotating(p), t);
    PureState4 fbar;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) fbar.f[i] += u(i, j) * psi0.f[j];
    return lab_from_rotating(fbar, p.omega, t);
}

Trajectory propagate_rk4(const ModelParams& p, const PureState4& psi0, double t_final,
                         int steps) {
    return propagate_rk4(p, [p](double t) { return hamiltonian_lab(p, t); }, psi0, t_final,
                         steps);
}

Trajectory propagate_rk4(const ModelParams& p, const HamiltonianFn& h, const PureState4& psi0,
                         double t_final, int steps) {
    if (steps < 1) throw Error("propagate_rk4: steps must be >= 1");
    Trajectory traj;
    traj.params = p;
    traj.times.resize(steps + 1);
    traj.states.resize(steps + 1);
    traj.states[0] = psi0;
    const double dt = t_final / steps;
    for (int i = 0; i < steps; ++i) {
        traj.times[i] = i * dt;
        traj.states[i + 1] = rk4_step(h, traj.states[i], traj.times[i], dt);
    }
    traj.times[steps] = t_final;
    for (const PureState4& s : traj.states)
        traj.max_norm_drift = std::max(traj.max_norm_drift, std::fabs(s.norm() - 1.0));
    return traj;
}

Trajectory make_trajectory(const ModelParams& p, const PureState4& psi0, double t_final,
                           int steps, PropagatorKind kind, BasisGauge gauge) {
    if (steps < 1) throw Error("make_trajectory: steps must be >= 1");
    if (kind == PropagatorKind::Rk4) return propagate_rk4(p, psi0, t_final, steps);

    Trajectory traj;
    traj.params = p;
    traj.times.resize(steps + 1);
    traj.states.resize(steps + 1);
    const double dt = t_final / steps;
    if (kind == PropagatorKind::Analytic) {
        const ModeCoefficients c = fit_coefficients(p, psi0, gauge);
        for (int i = 0; i <= steps; ++i) {
            traj.times[i] = (i == steps) ? t_final : i * dt;
            traj.states[i] = propagate_analytic(p, c, traj.times[i], gauge);
        }
    } else {
        const RotatingFramePropagator prop(p);
        for (int i = 0; i <= steps; ++i) {
            traj.times[i] = (i == steps) ? t_final : i * dt;
            traj.states[i] = prop.at(psi0, traj.times[i]);
        }
    }
    for (const PureState4& s : traj.states)
        traj.max_norm_drift = std::max(traj.max_norm_drift, std::fabs(s.norm() - 1.0));
    return traj;
}

} // namespace spinphase
