#include "spinphase/checks.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "spinphase/angles.hpp"
#include "spinphase/entanglement.hpp"

namespace spinphase {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

PureState4 random_state(Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    PureState4 s;
    for (Complex& z : s.f) z = Complex(g(rng), g(rng));
    return normalized(s);
}

double alpha_of(const ModelParams& p) {
    return std::hypot(2.0 * p.B * std::sin(p.theta), 2.0 * p.B * std::cos(p.theta) - p.omega);
}

ModelParams random_params(Rng& rng, double alpha_floor, double b_max = 2.0,
                          double w_max = 2.0) {
    for (;;) {
        ModelParams p{uniform(rng, 0.0, b_max), uniform(rng, 0.0, M_PI),
                      uniform(rng, -w_max, w_max), uniform(rng, -1.0, 1.0)};
        if (alpha_of(p) > alpha_floor) return p;
    }
}

ComplexMatrix random_hermitian(Rng& rng, int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = uniform(rng, -2.0, 2.0);
        for (int j = i + 1; j < n; ++j) {
            const Complex z(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
            m(i, j) = z;
            m(j, i) = std::conj(z);
        }
    }
    return m;
}

// Normalized mode-coefficient vector with c1 = 0 and c2^2 = -sign * 2 c3 c4,
// i.e. exactly on the separability manifold of the requested gauge.
ModeCoefficients separable_coefficients(Rng& rng, double sign = 1.0) {
    std::normal_distribution<double> g(0.0, 1.0);
    for (;;) {
        Complex c2(g(rng), g(rng));
        Complex c3(g(rng), g(rng));
        if (std::abs(c2) < 0.4 || std::abs(c3) < 0.3) continue;
        const Complex c4 = -sign * c2 * c2 / (2.0 * c3);
        if (std::abs(c4) > 3.0) continue;
        const double n =
            std::sqrt(std::norm(c2) + std::norm(c3) + std::norm(c4));
        return ModeCoefficients{{0.0, c2 / n, c3 / n, c4 / n}};
    }
}

std::string describe(const ModelParams& p) {
    std::ostringstream os;
    os << "(B=" << p.B << ", theta=" << p.theta << ", omega=" << p.omega << ", J=" << p.J
       << ")";
    return os.str();
}

// --- criterion 1 ---------------------------------------------------------

CheckResult check_propagator_agreement(bool inject) {
    CheckResult r{"propagator_agreement", 0.0, 1e-7, false, ""};
    Rng rng(12001);
    const int steps = 1 << 14;
    for (int iter = 0; iter < 50; ++iter) {
        const ModelParams p = random_params(rng, 1e-3);
        const PureState4 psi0 = random_state(rng);

        const HamiltonianFn h = [p, inject](double t) {
            ComplexMatrix m = hamiltonian_lab(p, t);
            if (inject) {
                m(1, 2) = -m(1, 2);
                m(2, 1) = -m(2, 1);
            }
            return m;
        };
        const Trajectory rk = propagate_rk4(p, h, psi0, 10.0, steps);
        const Trajectory an = make_trajectory(p, psi0, 10.0, steps, PropagatorKind::Analytic);
        const Trajectory ex = make_trajectory(p, psi0, 10.0, steps, PropagatorKind::Expm);

        for (int i = 0; i <= steps; i += 16) {
            double d = 0.0;
            for (int k = 0; k < 4; ++k) {
                d = std::max(d, std::abs(rk.states[i].f[k] - an.states[i].f[k]));
                d = std::max(d, std::abs(rk.states[i].f[k] - ex.states[i].f[k]));
                d = std::max(d, std::abs(an.states[i].f[k] - ex.states[i].f[k]));
            }
            if (d > r.max_distance) {
                r.max_distance = d;
                r.detail = describe(p) + " t=" + std::to_string(rk.times[i]);
            }
        }
    }
    r.pass = r.max_distance < r.threshold;
    return r;
}

// --- criterion 2 ---------------------------------------------------------

const std::vector<double> kThetaGrid5 = {0.0, M_PI / 4, M_PI / 2, 3 * M_PI / 4, M_PI};
const std::vector<double> kOmegaGrid5 = {-2.0, -1.0, 0.0, 1.0, 2.0};
const std::vector<double> kJGrid5 = {-1.0, -0.5, 0.0, 0.5, 1.0};

CheckResult check_pure_phase_oracle() {
    CheckResult r{"pure_phase_oracle_01", 0.0, 1e-6, false, ""};
    for (double theta : kThetaGrid5)
        for (double omega : kOmegaGrid5)
            for (double J : kJGrid5)
                for (double tau : {0.5, 2.0, 5.0}) {
                    const ModelParams p{1.0, theta, omega, J};
                    if (alpha_of(p) <= 1e-3) continue; // eta undefined at resonance
                    const Trajectory traj =
                        make_trajectory(p, ket01(), tau, 4096, PropagatorKind::Analytic);
                    const double num = geometric_phase_pure(traj).geometric;
                    const double ora = gamma_ab_01(p, tau).value;
                    const double d = wrapped_distance(num, ora);
                    if (d > r.max_distance) {
                        r.max_distance = d;
                        r.detail = describe(p) + " tau=" + std::to_string(tau);
                    }
                }
    r.pass = r.max_distance < r.threshold;
    return r;
}

// --- criterion 3 ---------------------------------------------------------

CheckResult check_mixed_phase_oracle() {
    CheckResult r{"mixed_phase_oracle_01", 0.0, 1e-4, false, ""};
    const int steps = 1 << 12;
    for (double theta : kThetaGrid5)
        for (double omega : kOmegaGrid5)
            for (double J : kJGrid5)
                for (double tau : {0.5, 2.0, 5.0}) {
                    // Stay inside the first degeneracy-free window of rho_a.
                    if (4.0 * std::fabs(J) * tau >= M_PI / 2 - 0.1) continue;
                    const ModelParams p{1.0, theta, omega, J};
                    if (alpha_of(p) <= 1e-3) continue;
                    const Trajectory traj =
                        make_trajectory(p, ket01(), tau, steps, PropagatorKind::Analytic);
                    const double ga = subsystem_phase(traj, Subsystem::A);
                    const double gb = subsystem_phase(traj, Subsystem::B);
                    const double da = wrapped_distance(ga, gamma_a_01(p, tau).value);
                    const double db = wrapped_distance(gb, gamma_b_01(p, tau).value);
                    const double d = std::max(da, db);
                    if (d > r.max_distance) {
                        r.max_distance = d;
                        r.detail = describe(p) + " tau=" + std::to_string(tau);
                    }
                }
    r.pass = r.max_distance < r.threshold;
    return r;
}

// --- criterion 4 ---------------------------------------------------------

CheckResult check_worked_example_00() {
    CheckResult r{"worked_example_00", 0.0, 1e-6, false, ""};
    const std::vector<double> thetas = {0.0, M_PI / 3, 2 * M_PI / 3, M_PI};
    const std::vector<double> omegas = {-2.0, -2.0 / 3.0, 2.0 / 3.0, 2.0};
    double max_conc = 0.0;
    for (double theta : thetas)
        for (double omega : omegas)
            for (double J : {0.0, 0.5}) {
                const ModelParams p{1.0, theta, omega, J};
                if (alpha_of(p) <= 1e-3) continue;
                for (double tau : {0.5, 2.0}) {
                    const Trajectory traj =
                        make_trajectory(p, ket00(), tau, 1 << 14, PropagatorKind::Analytic);
                    const double gab = geometric_phase_pure(traj).geometric;
                    const double ga = subsystem_phase(traj, Subsystem::A);
                    const double gb = subsystem_phase(traj, Subsystem::B);
                    const double sub = gamma_sub_00(p, tau).value;
                    double d = wrapped_distance(gab, gamma_ab_00(p, tau).value);
                    d = std::max(d, wrapped_distance(ga, sub));
                    d = std::max(d, wrapped_distance(gb, sub));
                    d = std::max(d, wrapped_distance(gab, 2.0 * ga));
                    if (d > r.max_distance) {
                        r.max_distance = d;
                        r.detail = describe(p) + " tau=" + std::to_string(tau);
                    }
                }
                for (const auto& [t, c] : separability_scan(p, ket00(), 10.0, 512))
                    max_conc = std::max(max_conc, c);
            }
    std::ostringstream os;
    os << "max |00> concurrence over [0,10] = " << max_conc << " (limit 1e-10); " << r.detail;
    r.detail = os.str();
    r.pass = r.max_distance < r.threshold && max_conc < 1e-10;
    return r;
}

// --- criterion 5 ---------------------------------------------------------

CheckResult check_concurrence_closed_form() {
    CheckResult r{"concurrence_closed_form", 0.0, 1e-9, false, ""};
    Rng rng(12005);
    for (int iter = 0; iter < 200; ++iter) {
        const ModelParams p = random_params(rng, 1e-3);
        const PureState4 psi0 = random_state(rng);
        const double t = uniform(rng, 0.0, 10.0);
        const ModeCoefficients c = fit_coefficients(p, psi0);
        const double numeric = concurrence(normalized(propagate_analytic(p, c, t)));
        const double closed = concurrence_closed_form(c, p.J, t);
        const double d = std::fabs(numeric - closed);
        if (d > r.max_distance) {
            r.max_distance = d;
            r.detail = describe(p) + " t=" + std::to_string(t);
        }
    }
    r.pass = r.max_distance < r.threshold;
    return r;
}

// --- criterion 6 ---------------------------------------------------------

CheckResult check_separability_condition() {
    CheckResult r{"concurrence_separability_condition", 0.0, 1e-9, false, ""};
    Rng rng(12006);

    // Vectors on the condition manifold must stay separable on [0, 10].
    for (int iter = 0; iter < 100; ++iter) {
        const ModelParams p = random_params(rng, 0.1);
        const ModeCoefficients c = separable_coefficients(rng);
        for (int i = 0; i <= 256; ++i) {
            const double t = 10.0 * i / 256;
            const double conc = concurrence(normalized(propagate_analytic(p, c, t)));
            r.max_distance = std::max(r.max_distance, conc);
        }
    }

    // Vectors violating it (at J = 0.5) must become visibly entangled somewhere.
    double min_peak = 1.0;
    int violators = 0;
    std::normal_distribution<double> g(0.0, 1.0);
    while (violators < 100) {
        ModelParams p = random_params(rng, 0.1);
        p.J = 0.5;
        ModeCoefficients c;
        double n2 = 0.0;
        for (Complex& z : c.c) {
            z = Complex(g(rng), g(rng));
            n2 += std::norm(z);
        }
        for (Complex& z : c.c) z /= std::sqrt(n2);
        const Complex w = c.c[1] * c.c[1] + 2.0 * c.c[2] * c.c[3];
        if (std::max(std::norm(c.c[0]), std::abs(w)) <= 0.1) continue; // not a clear violator
        ++violators;
        double peak = 0.0;
        for (int i = 0; i <= 2048; ++i) {
            const double t = 10.0 * i / 2048;
            peak = std::max(peak, concurrence(normalized(propagate_analytic(p, c, t))));
        }
        min_peak = std::min(min_peak, peak);
    }

    std::ostringstream os;
    os << "min peak concurrence among violators = " << min_peak << " (floor 1e-3)";
    r.detail = os.str();
    r.pass = r.max_distance < r.threshold && min_peak > 1e-3;
    return r;
}

// --- criterion 7 ---------------------------------------------------------

CheckResult check_recurrence_additivity() {
    CheckResult r{"concurrence_recurrence_additivity", 0.0, 0.0, false, ""};
    const ModelParams p{1.0, M_PI / 3, 0.5, 0.5};
    const ModeCoefficients c = fit_coefficients(p, ket01());
    const double period = M_PI / (4.0 * p.J);

    double conc_at_recurrence = 0.0;
    for (int n = 1; n <= 2; ++n)
        conc_at_recurrence = std::max(
            conc_at_recurrence, concurrence(normalized(propagate_analytic(p, c, n * period))));

    const Trajectory traj = make_trajectory(p, ket01(), period, 1 << 13,
                                            PropagatorKind::Analytic);
    const double gab = geometric_phase_pure(traj).geometric;
    const double sum = gamma_a_01(p, period).value + gamma_b_01(p, period).value;
    const double residual = wrapped_distance(gab, sum);

    // Additivity defect at tau = pi/4J, computed once by this pipeline and
    // pinned: the composite phase lands on pi/2 while gamma_a + gamma_b = 0.
    const double pinned = M_PI / 2;
    r.max_distance = residual;
    r.threshold = 1e-3; // floor demanded of the defect
    std::ostringstream os;
    os << "concurrence at n*pi/4J = " << conc_at_recurrence << " (limit 1e-8); |residual - "
       << pinned << "| = " << std::fabs(residual - pinned);
    r.detail = os.str();
    r.pass = conc_at_recurrence < 1e-8 && residual > 1e-3 &&
             std::fabs(residual - pinned) < 1e-6;
    return r;
}

// --- criterion 8 ---------------------------------------------------------

CheckResult check_additivity_separable() {
    CheckResult r{"additivity_separable", 0.0, 1e-6, false, ""};
    Rng rng(12008);
    for (int iter = 0; iter < 50; ++iter) {
        const ModelParams p = random_params(rng, 0.3, 1.2, 1.5);
        const ModeCoefficients c = separable_coefficients(rng);
        const PureState4 psi0 = normalized(propagate_analytic(p, c, 0.0));
        for (int k = 0; k < 5; ++k) {
            double tau = uniform(rng, 0.5, 2.5);
            Trajectory traj;
            // Redraw tau when an endpoint overlap degenerates (phase undefined).
            for (int attempt = 0;; ++attempt) {
                traj = make_trajectory(p, psi0, tau, 1 << 14, PropagatorKind::Analytic);
                const double comp = std::abs(inner(traj.states.front(), traj.states.back()));
                const ComplexMatrix ra = partial_trace(traj.states.back(), Subsystem::A);
                const ComplexMatrix r0 = partial_trace(psi0, Subsystem::A);
                const Complex suba = r0(0, 0) * ra(0, 0) + r0(0, 1) * ra(1, 0) +
                                     r0(1, 0) * ra(0, 1) + r0(1, 1) * ra(1, 1);
                if ((comp > 1e-2 && std::abs(suba) > 1e-2) || attempt > 16) break;
                tau = uniform(rng, 0.5, 2.5);
            }
            const double gab = geometric_phase_pure(traj).geometric;
            const double ga = subsystem_phase(traj, Subsystem::A);
            const double gb = subsystem_phase(traj, Subsystem::B);
            const double d = wrapped_distance(gab, ga + gb);
            if (d > r.max_distance) {
                r.max_distance = d;
                r.detail = describe(p) + " tau=" + std::to_string(tau);
            }
        }
    }
    r.pass = r.max_distance < r.threshold;
    return r;
}

// --- criterion 9 ---------------------------------------------------------

CheckResult check_gauge_convention() {
    CheckResult r{"gauge_convention", 0.0, 1e-9, false, ""};
    Rng rng(12009);
    const ModelParams p{1.0, M_PI / 3, 0.5, 0.5};

    bool classification_ok = true;
    for (int iter = 0; iter < 40; ++iter) {
        const ModeCoefficients flipped = separable_coefficients(rng, -1.0); // c2^2 = 2 c3 c4
        const ModeCoefficients standard = separable_coefficients(rng, +1.0); // c2^2 = -2 c3 c4

        const SeparabilityReport f_over = is_always_separable(flipped, 1e-9, p.J,
                                                              BasisGauge::Psi3Pi);
        const SeparabilityReport f_std = is_always_separable(flipped, 1e-9, p.J);
        const SeparabilityReport s_over = is_always_separable(standard, 1e-9, p.J,
                                                              BasisGauge::Psi3Pi);
        const SeparabilityReport s_std = is_always_separable(standard, 1e-9, p.J);
        classification_ok = classification_ok && f_over.always_separable &&
                            !f_std.always_separable && !s_over.always_separable &&
                            s_std.always_separable;
        r.max_distance = std::max(r.max_distance, f_over.residual_quadratic);
        r.max_distance = std::max(r.max_distance, s_std.residual_quadratic);
    }

    // Materialize one sign-flipped tuple in the re-phased basis: it must stay
    // separable there, and evolve into entanglement if read in the standard basis.
    const ModeCoefficients fam = separable_coefficients(rng, -1.0);
    double flipped_conc = 0.0, standard_conc = 0.0;
    for (int i = 0; i <= 64; ++i) {
        const double t = 5.0 * i / 64;
        flipped_conc = std::max(flipped_conc, concurrence(normalized(propagate_analytic(
                                                  p, fam, t, BasisGauge::Psi3Pi))));
        standard_conc = std::max(standard_conc,
                              concurrence(normalized(propagate_analytic(p, fam, t))));
    }
    std::ostringstream os;
    os << "flipped-basis max C = " << flipped_conc << ", standard-basis max C = " << standard_conc;
    r.detail = os.str();
    r.pass = classification_ok && r.max_distance < r.threshold && flipped_conc < 1e-10 &&
             standard_conc > 1e-3;
    return r;
}

// --- criterion 10 --------------------------------------------------------

CheckResult check_numerical_hygiene() {
    CheckResult r{"numerical_hygiene", 0.0, 1e-10, false, ""};
    const ModelParams p{1.0, M_PI / 3, 0.5, 0.2};

    // RK4 order against the exponential propagator.
    const PureState4 ref = propagate_expm(p, ket01(), 5.0);
    auto rk_err = [&](int steps) {
        const PureState4 end = propagate_rk4(p, ket01(), 5.0, steps).states.back();
        double e = 0.0;
        for (int k = 0; k < 4; ++k) e = std::max(e, std::abs(end.f[k] - ref.f[k]));
        return e;
    };
    const double e1 = rk_err(256), e2 = rk_err(512), e3 = rk_err(1024);
    const double order1 = std::log2(e1 / e2);
    const double order2 = std::log2(e2 / e3);
    const bool order_ok =
        order1 > 3.7 && order1 < 4.3 && order2 > 3.7 && order2 < 4.3;

    // Simpson Richardson residual on the dynamic phase.
    const double dyn1 =
        dynamic_phase(make_trajectory(p, ket01(), 2.0, 2048, PropagatorKind::Analytic));
    const double dyn2 =
        dynamic_phase(make_trajectory(p, ket01(), 2.0, 4096, PropagatorKind::Analytic));
    const double richardson = std::fabs(dyn2 - dyn1);

    // eig/expm property sweep.
    const double linalg_ratio = linalg_property_sweep(1000, 777);

    r.max_distance = richardson;
    std::ostringstream os;
    os << "rk4 orders = " << order1 << ", " << order2
       << "; linalg worst residual ratio = " << linalg_ratio;
    r.detail = os.str();
    r.pass = order_ok && richardson < r.threshold && linalg_ratio < 1.0;
    return r;
}

} // namespace

double linalg_property_sweep(int cases, unsigned seed) {
    Rng rng(seed);
    double worst = 0.0;
    for (int iter = 0; iter < cases; ++iter) {
        const int n = 2 + iter % 3;
        const ComplexMatrix m = random_hermitian(rng, n);
        const EigenSystem es = eig_hermitian(m);

        // Eigenpair residual and pairwise orthonormality (tolerance 1e-10).
        for (int k = 0; k < n; ++k) {
            for (int i = 0; i < n; ++i) {
                Complex mv = 0.0;
                for (int j = 0; j < n; ++j) mv += m(i, j) * es.vectors(j, k);
                worst = std::max(worst,
                                 std::abs(mv - es.eigenvalues[k] * es.vectors(i, k)) / 1e-10);
            }
            for (int l = 0; l < n; ++l) {
                Complex dot = 0.0;
                for (int i = 0; i < n; ++i)
                    dot += std::conj(es.vectors(i, k)) * es.vectors(i, l);
                worst = std::max(worst, std::abs(dot - (k == l ? 1.0 : 0.0)) / 1e-10);
            }
        }

        // Reconstruction sum_k lambda_k v v^dagger = M (tolerance 1e-9).
        ComplexMatrix rec(n, n);
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    rec(i, j) += es.eigenvalues[k] * es.vectors(i, k) *
                                 std::conj(es.vectors(j, k));
        worst = std::max(worst, (rec - m).max_abs() / 1e-9);

        // expm unitarity (1e-10) and group property (1e-9).
        const double t1 = uniform(rng, 0.1, 1.5);
        const double t2 = uniform(rng, 0.1, 1.5);
        const ComplexMatrix u1 = expm_i_hermitian(m, t1);
        const ComplexMatrix u2 = expm_i_hermitian(m, t2);
        const ComplexMatrix u12 = expm_i_hermitian(m, t1 + t2);
        worst = std::max(worst,
                         (u1.adjoint() * u1 - ComplexMatrix::identity(n)).max_abs() / 1e-10);
        worst = std::max(worst, (u1 * u2 - u12).max_abs() / 1e-9);
    }
    return worst;
}

std::vector<CheckResult> run_verification(const CheckOptions& opts) {
    std::vector<CheckResult> results;
    const auto want = [&](const char* name) {
        return opts.only.empty() || std::string(name).find(opts.only) != std::string::npos;
    };
    if (want("propagator_agreement"))
        results.push_back(check_propagator_agreement(opts.inject_exchange_sign_flip));
    if (want("pure_phase_oracle_01")) results.push_back(check_pure_phase_oracle());
    if (want("mixed_phase_oracle_01")) results.push_back(check_mixed_phase_oracle());
    if (want("worked_example_00")) results.push_back(check_worked_example_00());
    if (want("concurrence_closed_form")) results.push_back(check_concurrence_closed_form());
    if (want("concurrence_separability_condition"))
        results.push_back(check_separability_condition());
    if (want("concurrence_recurrence_additivity"))
        results.push_back(check_recurrence_additivity());
    if (want("additivity_separable")) results.push_back(check_additivity_separable());
    if (want("gauge_convention")) results.push_back(check_gauge_convention());
    if (want("numerical_hygiene")) results.push_back(check_numerical_hygiene());
    return results;
}

} // namespace spinphase
