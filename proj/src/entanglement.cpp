#include "spinphase/entanglement.hpp"

#include <cmath>

namespace spinphase {

double concurrence(const PureState4& psi) {
    if (std::fabs(psi.norm() - 1.0) > 1e-6)
        throw Error("concurrence: state is not normalized");
    const double c = 2.0 * std::abs(psi.f[0] * psi.f[3] - psi.f[1] * psi.f[2]);
    return std::min(1.0, std::max(0.0, c));
}

namespace {

Complex quadratic_residual(const ModeCoefficients& c, BasisGauge gauge) {
    const double sign = (gauge == BasisGauge::Psi3Pi) ? -1.0 : 1.0;
    return c.c[1] * c.c[1] + sign * 2.0 * c.c[2] * c.c[3];
}

} // namespace

double concurrence_closed_form(const ModeCoefficients& c, double J, double t,
                               BasisGauge gauge) {
    const Complex w = quadratic_residual(c, gauge);
    const Complex rot = c.c[0] * c.c[0] * std::exp(Complex(0.0, 8.0 * J * t));
    return std::abs(w - rot);
}

SeparabilityReport is_always_separable(const ModeCoefficients& c, double tol, double J,
                                       BasisGauge gauge) {
    SeparabilityReport rep;
    const Complex w = quadratic_residual(c, gauge);
    rep.residual_c1 = std::abs(c.c[0]);
    rep.residual_quadratic = std::abs(w);
    rep.always_separable = rep.residual_c1 < tol && rep.residual_quadratic < tol;
    rep.cyclic_separable = std::abs(w - c.c[0] * c.c[0]) < tol;
    if (rep.cyclic_separable && !rep.always_separable && J != 0.0)
        rep.recurrence_period = M_PI / (4.0 * std::fabs(J));
    return rep;
}

std::vector<std::pair<double, double>> separability_scan(const ModelParams& p,
                                                         const PureState4& psi0,
                                                         double t_final, int samples) {
    if (samples < 2) throw Error("separability_scan: need at least 2 samples");

    bool analytic = true;
    ModeCoefficients c;
    try {
        c = fit_coefficients(p, psi0);
    } catch (const UndefinedBasisError&) {
        analytic = false; // alpha = 0: fall back to the exponential propagator
    }

    std::vector<std::pair<double, double>> out;
    out.reserve(samples);
    const double dt = t_final / (samples - 1);
    for (int i = 0; i < samples; ++i) {
        const double t = (i == samples - 1) ? t_final : i * dt;
        const PureState4 psi =
            analytic ? propagate_analytic(p, c, t) : propagate_expm(p, psi0, t);
        out.emplace_back(t, concurrence(psi));
    }
    return out;
}

} // namespace spinphase
