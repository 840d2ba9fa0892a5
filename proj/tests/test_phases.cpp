#include <doctest.h>

#include <cmath>
#include <random>

#include "spinphase/angles.hpp"
#include "spinphase/oracles.hpp"

using namespace spinphase;

namespace {

const ModelParams kRef{1.0, M_PI / 3, 0.5, 0.2};

Trajectory ref_trajectory(const PureState4& psi0, double tau, int steps = 4096) {
    return make_trajectory(kRef, psi0, tau, steps, PropagatorKind::Analytic);
}

} // namespace

TEST_CASE("total_phase: identity, pure factor, orthogonal endpoints") {
    const PureState4 s = singlet();
    CHECK(total_phase(s, s) == 0.0);

    PureState4 rotated = s;
    for (Complex& z : rotated.f) z *= std::exp(Complex(0, M_PI / 3));
    CHECK(total_phase(s, rotated) == doctest::Approx(M_PI / 3).epsilon(1e-14));

    CHECK_THROWS_AS(total_phase(ket00(), ket11()), UndefinedPhaseError);
}

TEST_CASE("dynamic_phase: zero Hamiltonian, singlet eigen-ray, Richardson") {
    const Trajectory flat =
        make_trajectory(ModelParams{0, 0.3, 0, 0}, ket01(), 3.0, 256, PropagatorKind::Expm);
    CHECK(std::fabs(dynamic_phase(flat)) < 1e-12);

    // H singlet = -3J singlet, so the dynamic phase is +3 J t_final.
    const Trajectory st = ref_trajectory(singlet(), 4.0);
    CHECK(dynamic_phase(st) == doctest::Approx(3 * kRef.J * 4.0).epsilon(1e-9));

    const double d1 = dynamic_phase(ref_trajectory(ket01(), 2.0, 2048));
    const double d2 = dynamic_phase(ref_trajectory(ket01(), 2.0, 4096));
    CHECK(std::fabs(d1 - d2) < 1e-10);

    CHECK_THROWS_AS(dynamic_phase(ref_trajectory(ket01(), 2.0, 1)), ResolutionError);
}

TEST_CASE("dynamic_phase: finite-difference evaluation agrees at 1e-5") {
    const Trajectory traj = ref_trajectory(ket01(), 2.0, 4096);
    CHECK(std::fabs(dynamic_phase(traj) - dynamic_phase_fd(traj)) < 1e-5);

    // Norm-conservation diagnostic: Re<psi|dpsi/dt> = Re<psi|-iH psi> vanishes.
    for (size_t i = 0; i < traj.times.size(); i += 512) {
        const ComplexMatrix h = hamiltonian_lab(traj.params, traj.times[i]);
        PureState4 dpsi;
        for (int r = 0; r < 4; ++r) {
            Complex acc = 0.0;
            for (int c = 0; c < 4; ++c) acc += h(r, c) * traj.states[i].f[c];
            dpsi.f[r] = Complex(0, -1) * acc;
        }
        CHECK(std::fabs(inner(traj.states[i], dpsi).real()) < 1e-8);
    }
}

TEST_CASE("geometric_phase_pure: eigenstate trajectory has zero geometric phase") {
    const PhaseBreakdown pb = geometric_phase_pure(ref_trajectory(singlet(), 5.0));
    CHECK(std::fabs(pb.geometric) < 1e-9);
    CHECK(std::fabs(pb.geometric_unwrapped) < 1e-9);
    CHECK(wrapped_distance(pb.total, pb.dynamic) < 1e-9);
}

TEST_CASE("geometric_phase_pure: |01> matches the closed form") {
    const PhaseBreakdown pb = geometric_phase_pure(ref_trajectory(ket01(), 2.0));
    const double oracle = gamma_ab_01(kRef, 2.0).value;
    CHECK(wrapped_distance(pb.geometric, oracle) < 1e-6);
    // total = geometric + dynamic (mod 2pi)
    CHECK(wrapped_distance(pb.total, pb.geometric + pb.dynamic) < 1e-9);
}

TEST_CASE("kinematic phase is exactly gauge invariant and matches the H-route") {
    // The discrete connection converges at second order; 2^15 points puts its
    // error well below the 1e-8 compared here.
    const Trajectory traj = ref_trajectory(ket01(), 2.0, 1 << 15);
    const double base = geometric_phase_kinematic(traj.states);
    CHECK(wrapped_distance(base, geometric_phase_pure(traj).geometric) < 1e-8);

    // Smooth random re-phasing chi(t), chi(0) = 0.
    std::vector<PureState4> rephased = traj.states;
    for (size_t i = 0; i < rephased.size(); ++i) {
        const double t = traj.times[i];
        const double chi = 0.8 * std::sin(1.7 * t) + 0.31 * t * t / (1.0 + t);
        for (Complex& z : rephased[i].f) z *= std::exp(Complex(0, chi));
    }
    CHECK(wrapped_distance(geometric_phase_kinematic(rephased), base) < 1e-8);
}

TEST_CASE("partial_trace: product, maximally entangled and closed-form cases") {
    const ComplexMatrix ra = partial_trace(ket01(), Subsystem::A);
    CHECK(std::abs(ra(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(ra(1, 1)) < 1e-15);
    const ComplexMatrix rb = partial_trace(ket01(), Subsystem::B);
    CHECK(std::abs(rb(0, 0)) < 1e-15);
    CHECK(std::abs(rb(1, 1) - 1.0) < 1e-15);

    for (Subsystem s : {Subsystem::A, Subsystem::B}) {
        const ComplexMatrix half = partial_trace(singlet(), s);
        CHECK(std::abs(half(0, 0) - 0.5) < 1e-15);
        CHECK(std::abs(half(1, 1) - 0.5) < 1e-15);
        CHECK(std::abs(half(0, 1)) < 1e-15);
    }

    // Evolved |01>: elements match the closed-form density operator.
    const PureState4 psi = propagate_expm(kRef, ket01(), 1.0);
    for (Subsystem s : {Subsystem::A, Subsystem::B}) {
        const ComplexMatrix num = partial_trace(psi, s);
        const ComplexMatrix ref = rho_closed_form(InitialCase::Ket01, kRef, 1.0, s);
        CHECK((num - ref).max_abs() < 1e-9);
        CHECK(num.hermiticity_defect() < 1e-14);
        CHECK(std::abs(num.trace() - 1.0) < 1e-12);
        const EigenSystem es = eig_hermitian(num);
        CHECK(es.eigenvalues[0] > -1e-12);
    }
}

TEST_CASE("eigen_trajectory: constant mixed state") {
    std::vector<double> times;
    std::vector<ComplexMatrix> rho;
    for (int i = 0; i <= 50; ++i) {
        times.push_back(0.1 * i);
        ComplexMatrix m(2, 2);
        m(0, 0) = 0.8;
        m(1, 1) = 0.2;
        rho.push_back(m);
    }
    const SpectralTrajectory spec = eigen_trajectory(times, rho);
    for (size_t i = 0; i < times.size(); ++i) {
        CHECK(spec.degeneracy_flags[i] == 0);
        CHECK(spec.weights[0][i] == doctest::Approx(0.2));
        CHECK(spec.weights[1][i] == doctest::Approx(0.8));
        CHECK(std::fabs(spec.weights[0][i] + spec.weights[1][i] - 1.0) < 1e-10);
    }
    CHECK(std::fabs(geometric_phase_mixed(spec)) < 1e-12);
}

TEST_CASE("eigen_trajectory: rank-1 series reproduces the state up to gauge") {
    std::vector<double> times;
    std::vector<ComplexMatrix> rho;
    std::vector<std::array<Complex, 2>> phi;
    for (int i = 0; i <= 400; ++i) {
        const double t = 0.01 * i;
        times.push_back(t);
        const std::array<Complex, 2> v = {std::cos(0.7 * t),
                                          std::sin(0.7 * t) * std::exp(Complex(0, 1.3 * t))};
        phi.push_back(v);
        ComplexMatrix m(2, 2);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) m(a, b) = v[a] * std::conj(v[b]);
        rho.push_back(m);
    }
    const SpectralTrajectory spec = eigen_trajectory(times, rho);
    for (size_t i = 0; i < times.size(); i += 40) {
        CHECK(spec.weights[1][i] == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(std::fabs(spec.weights[0][i]) < 1e-10);
        const Complex ov = std::conj(spec.branches[1][i][0]) * phi[i][0] +
                           std::conj(spec.branches[1][i][1]) * phi[i][1];
        CHECK(std::abs(ov) == doctest::Approx(1.0).epsilon(1e-9));
    }
    // Consecutive-overlap alignment holds per branch.
    for (size_t i = 0; i + 1 < times.size(); ++i)
        for (int m = 0; m < 2; ++m) {
            const Complex ov = std::conj(spec.branches[m][i][0]) * spec.branches[m][i + 1][0] +
                               std::conj(spec.branches[m][i][1]) * spec.branches[m][i + 1][1];
            CHECK(ov.real() >= -1e-12);
        }
}

TEST_CASE("eigen_trajectory: degeneracy flag where rho_a of evolved |01> hits I/2") {
    // Bloch radius of subsystem a shrinks as |cos 4Jt|: first zero at pi/(8J).
    // Stop at 1.5x that time: one crossing inside, endpoint weights generic.
    const double t_deg = M_PI / (8 * kRef.J);
    const Trajectory traj = ref_trajectory(ket01(), 1.5 * t_deg, 2048);
    const SpectralTrajectory spec =
        eigen_trajectory(traj.times, reduced_series(traj, Subsystem::A), 1e-3);
    double first_flag = -1.0;
    for (size_t i = 0; i < spec.times.size(); ++i)
        if (spec.degeneracy_flags[i]) {
            first_flag = spec.times[i];
            break;
        }
    REQUIRE(first_flag >= 0.0);
    CHECK(std::fabs(first_flag - t_deg) < 0.01);

    CHECK_THROWS_AS(geometric_phase_mixed(spec), DegeneracyError);
    CHECK_NOTHROW(geometric_phase_mixed(spec, DegeneracyPolicy::Skip));

    // At 4Jt = pi the branch that started with weight 1 ends with weight 0, so
    // the weighted overlap sum genuinely vanishes even under the skip policy.
    const Trajectory echo = ref_trajectory(ket01(), 2 * t_deg, 2048);
    const SpectralTrajectory espec =
        eigen_trajectory(echo.times, reduced_series(echo, Subsystem::A), 1e-3);
    CHECK_THROWS_AS(geometric_phase_mixed(espec, DegeneracyPolicy::Skip),
                    UndefinedPhaseError);
}

TEST_CASE("eigen_trajectory: coarse grid is rejected") {
    // Three samples of a quarter-turn-per-sample rotation.
    std::vector<double> times = {0.0, 1.0, 2.0};
    std::vector<ComplexMatrix> rho;
    for (double t : times) {
        ComplexMatrix m(2, 2);
        m(0, 0) = 0.5 + 0.4 * std::cos(2.0 * t);
        m(1, 1) = 1.0 - m(0, 0).real();
        m(0, 1) = 0.4 * std::sin(2.0 * t);
        m(1, 0) = m(0, 1);
        rho.push_back(m);
    }
    CHECK_THROWS_AS(eigen_trajectory(times, rho), ResolutionError);
}

TEST_CASE("geometric_phase_mixed: pure-state series reduces to the pure formula") {
    // Two-level state with an analytically known derivative.
    std::vector<double> times;
    std::vector<ComplexMatrix> rho;
    const double w1 = 0.9, w2 = 0.55;
    const double tau = 2.0;
    const int n = 16384;
    std::vector<double> integrand(n + 1);
    std::array<Complex, 2> first{}, last{};
    for (int i = 0; i <= n; ++i) {
        const double t = tau * i / n;
        times.push_back(t);
        const std::array<Complex, 2> v = {std::cos(w1 * t),
                                          std::sin(w1 * t) * std::exp(Complex(0, w2 * t))};
        const std::array<Complex, 2> dv = {
            -w1 * std::sin(w1 * t),
            (w1 * std::cos(w1 * t) + Complex(0, w2) * std::sin(w1 * t)) *
                std::exp(Complex(0, w2 * t))};
        integrand[i] = (Complex(0, 1) * (std::conj(v[0]) * dv[0] + std::conj(v[1]) * dv[1]))
                           .real();
        if (i == 0) first = v;
        if (i == n) last = v;
        ComplexMatrix m(2, 2);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) m(a, b) = v[a] * std::conj(v[b]);
        rho.push_back(m);
    }
    // Simpson quadrature of i<phi|dphi/dt>.
    double dyn = 0.0;
    const double dt = tau / n;
    for (int i = 0; i + 2 <= n; i += 2)
        dyn += dt / 3 * (integrand[i] + 4 * integrand[i + 1] + integrand[i + 2]);
    const double total = std::arg(std::conj(first[0]) * last[0] + std::conj(first[1]) * last[1]);
    const double pure = wrap_angle(total + dyn);

    const double mixed = geometric_phase_mixed(eigen_trajectory(times, rho));
    CHECK(wrapped_distance(mixed, pure) < 1e-8);
}

TEST_CASE("geometric_phase_mixed: evolved |00> subsystem matches the closed form") {
    const ModelParams p{1.0, M_PI / 3, 0.5, 0.7};
    const Trajectory traj = make_trajectory(p, ket00(), 2.0, 1 << 13, PropagatorKind::Analytic);
    const double ga = subsystem_phase(traj, Subsystem::A);
    CHECK(wrapped_distance(ga, gamma_sub_00(p, 2.0).value) < 1e-6);
}

TEST_CASE("geometric_phase_mixed: evolved |01> subsystem inside the first window") {
    const double tau = 1.2; // 4 J tau < pi/2 for J = 0.2
    const Trajectory traj = ref_trajectory(ket01(), tau, 1 << 12);
    const double ga = subsystem_phase(traj, Subsystem::A);
    const double gb = subsystem_phase(traj, Subsystem::B);
    CHECK(wrapped_distance(ga, gamma_a_01(kRef, tau).value) < 1e-4);
    CHECK(wrapped_distance(gb, gamma_b_01(kRef, tau).value) < 1e-4);
}

TEST_CASE("mixed-phase grid convergence away from degeneracies") {
    const double tau = 1.2;
    const double g1 = subsystem_phase(ref_trajectory(ket01(), tau, 2048), Subsystem::A);
    const double g2 = subsystem_phase(ref_trajectory(ket01(), tau, 4096), Subsystem::A);
    CHECK(wrapped_distance(g1, g2) < 1e-6);
}
