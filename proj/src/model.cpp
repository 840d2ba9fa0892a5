#include "spinphase/model.hpp"

#include <cmath>

namespace spinphase {

void validate(const ModelParams& p) {
    if (!std::isfinite(p.B) || !std::isfinite(p.theta) || !std::isfinite(p.omega) ||
        !std::isfinite(p.J))
        throw ConfigError("model parameters must be finite");
    if (p.B < 0.0) throw ConfigError("field magnitude B must be >= 0");
    if (p.theta < 0.0 || p.theta > M_PI) throw ConfigError("tilt angle theta must be in [0, pi]");
}

double PureState4::norm() const {
    double s = 0.0;
    for (const Complex& z : f) s += std::norm(z);
    return std::sqrt(s);
}

Complex inner(const PureState4& x, const PureState4& y) {
    Complex s = 0.0;
    for (int k = 0; k < 4; ++k) s += std::conj(x.f[k]) * y.f[k];
    return s;
}

PureState4 normalized(PureState4 s) {
    const double n = s.norm();
    if (n <= 0.0) throw Error("cannot normalize the zero state");
    for (Complex& z : s.f) z /= n;
    return s;
}

PureState4 ket00() { return PureState4{{Complex(1), 0, 0, 0}}; }
PureState4 ket01() { return PureState4{{0, Complex(1), 0, 0}}; }
PureState4 ket10() { return PureState4{{0, 0, Complex(1), 0}}; }
PureState4 ket11() { return PureState4{{0, 0, 0, Complex(1)}}; }

PureState4 singlet() {
    const double r = 1.0 / std::sqrt(2.0);
    return PureState4{{0, Complex(r), Complex(-r), 0}};
}

ComplexMatrix hamiltonian_lab(const ModelParams& p, double t) {
    const double bs = p.B * std::sin(p.theta);
    const double bc = p.B * std::cos(p.theta);
    const Complex em = bs * std::exp(Complex(0.0, -p.omega * t));
    const Complex ep = std::conj(em);

    ComplexMatrix h(4, 4);
    h(0, 0) = p.J + 2.0 * bc;
    h(1, 1) = -p.J;
    h(2, 2) = -p.J;
    h(3, 3) = p.J - 2.0 * bc;
    h(1, 2) = 2.0 * p.J;
    h(2, 1) = 2.0 * p.J;
    h(0, 1) = em;
    h(0, 2) = em;
    h(1, 3) = em;
    h(2, 3) = em;
    h(1, 0) = ep;
    h(2, 0) = ep;
    h(3, 1) = ep;
    h(3, 2) = ep;
    return h;
}

ComplexMatrix hamiltonian_rotating(const ModelParams& p) {
    const double bs = p.B * std::sin(p.theta);
    const double bc = p.B * std::cos(p.theta);

    ComplexMatrix h(4, 4);
    h(0, 0) = p.J + 2.0 * bc - p.omega;
    h(1, 1) = -p.J;
    h(2, 2) = -p.J;
    h(3, 3) = p.J - 2.0 * bc + p.omega;
    h(1, 2) = 2.0 * p.J;
    h(2, 1) = 2.0 * p.J;
    h(0, 1) = bs;
    h(0, 2) = bs;
    h(1, 3) = bs;
    h(2, 3) = bs;
    h(1, 0) = bs;
    h(2, 0) = bs;
    h(3, 1) = bs;
    h(3, 2) = bs;
    return h;
}

DerivedAngles derived_angles(const ModelParams& p) {
    const double num = 2.0 * p.B * std::sin(p.theta); // >= 0 for theta in [0, pi]
    const double den = 2.0 * p.B * std::cos(p.theta) - p.omega;
    const double alpha = std::hypot(num, den);
    if (alpha == 0.0) throw UndefinedEtaError();
    // atan2 keeps eta in [0, pi] because the numerator is never negative.
    return DerivedAngles{alpha, std::atan2(num, den)};
}

PureState4 lab_from_rotating(const PureState4& fbar, double omega, double t) {
    PureState4 f = fbar;
    f.f[0] *= std::exp(Complex(0.0, -omega * t));
    f.f[3] *= std::exp(Complex(0.0, omega * t));
    return f;
}

} // namespace spinphase
