#include "spinphase/oracles.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "spinphase/angles.hpp"

namespace spinphase {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct CurveAngle {
    double angle = 0.0;
    int two_pi_steps = 0;
    bool boundary = false;
};

// Accumulated polar angle of the curve z(t), t in [0, tau], starting from the
// principal value at t = 0. Local bisection keeps every angular step small;
// a pass through the origin itself is an undefined point.
CurveAngle unwrap_angle_curve(const std::function<Complex(double)>& z, double tau,
                              double rate) {
    CurveAngle out;
    if (tau == 0.0) {
        out.angle = std::arg(z(0.0));
        return out;
    }
    const int n = static_cast<int>(std::min(2.0e6, std::max(64.0, std::ceil(std::fabs(tau) * rate * 6.0))));
    const double dt = tau / n;

    double t_prev = 0.0;
    double raw_prev = std::arg(z(0.0));
    double acc = raw_prev;

    // Refine the step [ta, tb] until each wrapped increment is small. When an
    // interval shrinks to floating resolution while the angle still jumps, the
    // curve pinches the origin closer than tau can resolve; the wrapped step
    // (a +/- pi swing, immaterial mod 2pi) is accepted and flagged.
    std::function<double(double, double, double, double, int)> refine =
        [&](double ta, double ra, double tb, double rb, int depth) -> double {
        const double d = wrap_angle(rb - ra);
        if (std::fabs(d) < 1.0) return d;
        if (tb - ta < 4e-16 * std::max(1.0, std::fabs(tb)) || depth > 64) {
            out.boundary = true;
            return d;
        }
        const double tm = 0.5 * (ta + tb);
        const Complex zm = z(tm);
        if (std::abs(zm) < 1e-250)
            throw UndefinedPhaseError("oracle arctan term undefined (0/0) at tau = " +
                                      std::to_string(tm));
        const double rm = std::arg(zm);
        return refine(ta, ra, tm, rm, depth + 1) + refine(tm, rm, tb, rb, depth + 1);
    };

    for (int i = 1; i <= n; ++i) {
        const double t = (i == n) ? tau : i * dt;
        const double raw = std::arg(z(t));
        acc += refine(t_prev, raw_prev, t, raw, 0);
        t_prev = t;
        raw_prev = raw;
    }
    out.angle = acc;
    out.two_pi_steps = static_cast<int>(std::lround((acc - raw_prev) / (2.0 * M_PI)));
    out.boundary = out.boundary || std::abs(z(tau)) < 1e-9;
    return out;
}

void require_nonnegative_tau(double tau) {
    if (!(tau >= 0.0)) throw Error("oracle: tau must be >= 0");
}

} // namespace

OracleResult gamma_ab_01(const ModelParams& p, double tau) {
    require_nonnegative_tau(tau);
    const DerivedAngles ang = derived_angles(p);
    const double ce = std::cos(ang.eta);
    const double s2 = std::sin(ang.eta) * std::sin(ang.eta);
    const double c2 = ce * ce;

    OracleResult out;
    out.window_end = kInf;

    if (s2 < 1e-20) {
        // Field along the rotation axis: the curve (1 + cos 4Jt, sin 4Jt)
        // touches the origin at odd multiples of pi, where the phase steps by
        // pi (either sign, immaterial mod 2pi). In between the term is 2Jt.
        const double u = std::fabs(4.0 * p.J * tau);
        const int crossings = static_cast<int>(std::floor((u + M_PI) / (2.0 * M_PI)));
        out.value = M_PI * crossings; // the 2J tau term cancels against -2J tau
        out.branch_corrections = crossings;
        out.boundary_flag = std::fabs(std::remainder(u, 2.0 * M_PI)) > M_PI - 1e-9;
        return out;
    }

    const auto curve = [&](double t) {
        return Complex(c2 + s2 * std::cos(ang.alpha * t) + std::cos(4.0 * p.J * t),
                       std::sin(4.0 * p.J * t));
    };
    const CurveAngle term =
        unwrap_angle_curve(curve, tau, 4.0 * std::fabs(p.J) + ang.alpha + 1.0);
    out.value = term.angle - 2.0 * p.J * tau;
    out.branch_corrections = term.two_pi_steps;
    out.boundary_flag = term.boundary;
    return out;
}

namespace {

// Shared shape of the subsystem formulas:
//   sign_a * [ arctan-continued(-cos(eta) tan(alpha tau / 2))
//              + (omega sin^2 eta / 2 alpha) sin(alpha tau)
//              + (alpha tau / 2) cos(eta) - (omega tau / 2) sin^2 eta ].
double subsystem_secular(const ModelParams& p, const DerivedAngles& ang, double tau) {
    const double s2 = std::sin(ang.eta) * std::sin(ang.eta);
    return p.omega * s2 / (2.0 * ang.alpha) * std::sin(ang.alpha * tau) +
           0.5 * ang.alpha * tau * std::cos(ang.eta) - 0.5 * p.omega * tau * s2;
}

OracleResult subsystem_01_common(const ModelParams& p, double tau, double sign) {
    require_nonnegative_tau(tau);
    const DerivedAngles ang = derived_angles(p);
    OracleResult out;
    out.window_end = (p.J != 0.0) ? M_PI / (8.0 * std::fabs(p.J)) : kInf;
    int steps = 0;
    const double term = unwrapped_tan_angle(-std::cos(ang.eta), 0.5 * ang.alpha * tau, &steps);
    out.value = sign * (term + subsystem_secular(p, ang, tau));
    out.branch_corrections = steps;
    out.boundary_flag = std::fabs(std::cos(ang.alpha * tau) + 1.0) < 1e-12;
    return out;
}

} // namespace

OracleResult gamma_a_01(const ModelParams& p, double tau) {
    return subsystem_01_common(p, tau, +1.0);
}

OracleResult gamma_b_01(const ModelParams& p, double tau) {
    return subsystem_01_common(p, tau, -1.0);
}

OracleResult gamma_sub_00(const ModelParams& p, double tau) {
    OracleResult out = subsystem_01_common(p, tau, +1.0);
    out.window_end = kInf; // the |00> subsystems stay pure, no degeneracy
    return out;
}

OracleResult gamma_ab_00(const ModelParams& p, double tau) {
    require_nonnegative_tau(tau);
    const DerivedAngles ang = derived_angles(p);
    const double s2 = std::sin(ang.eta) * std::sin(ang.eta);

    OracleResult out;
    out.window_end = kInf;
    int steps = 0;
    // Double-angle image of the subsystem ellipse: continued arctan of
    // -2 cos(eta) sin(alpha tau) over (sin^2 eta + (1 + cos^2 eta) cos(alpha tau)).
    const double term =
        2.0 * unwrapped_tan_angle(-std::cos(ang.eta), 0.5 * ang.alpha * tau, &steps);
    out.value = term + p.omega * s2 / ang.alpha * std::sin(ang.alpha * tau) +
                ang.alpha * tau * std::cos(ang.eta) - p.omega * tau * s2;
    out.branch_corrections = steps;
    out.boundary_flag = std::fabs(std::cos(ang.alpha * tau) + 1.0) < 1e-12;
    return out;
}

ComplexMatrix rho_closed_form(InitialCase initial, const ModelParams& p, double t,
                              Subsystem which) {
    const DerivedAngles ang = derived_angles(p);
    const double se = std::sin(ang.eta);
    const double ce = std::cos(ang.eta);
    const double cat = std::cos(ang.alpha * t);
    const double sat = std::sin(ang.alpha * t);
    const Complex frame = std::exp(Complex(0.0, -p.omega * t));

    double r11;
    Complex r12;
    if (initial == InitialCase::Ket00) {
        // Both subsystems share one form.
        r11 = 0.5 * (1.0 + ce * ce + se * se * cat);
        r12 = 0.5 * Complex(se * ce * (1.0 - cat), se * sat) * frame;
    } else {
        const double c4 = std::cos(4.0 * p.J * t);
        const double zpart = (ce * ce + se * se * cat) * c4;
        const Complex cross = 0.5 * Complex(se * ce * (1.0 - cat), se * sat) * frame * c4;
        if (which == Subsystem::A) {
            r11 = 0.5 * (1.0 + zpart);
            r12 = cross;
        } else {
            r11 = 0.5 * (1.0 - zpart);
            r12 = -cross;
        }
    }
    ComplexMatrix rho(2, 2);
    rho(0, 0) = r11;
    rho(1, 1) = 1.0 - r11;
    rho(0, 1) = r12;
    rho(1, 0) = std::conj(r12);
    return rho;
}

} // namespace spinphase
