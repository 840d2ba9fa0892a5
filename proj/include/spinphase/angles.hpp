#pragma once

#include <cmath>

namespace spinphase {

// Reduce an angle into the principal interval (-pi, pi].
inline double wrap_angle(double x) {
    double r = std::remainder(x, 2.0 * M_PI); // [-pi, pi]
    if (r <= -M_PI) r += 2.0 * M_PI;
    return r;
}

// Modular distance between two angles: |((x - y + pi) mod 2pi) - pi|, in [0, pi].
inline double wrapped_distance(double x, double y) {
    return std::fabs(wrap_angle(x - y));
}

// Continuation of arctan(k * tan(x)) that is continuous in x with value 0 at x = 0.
// Equals the accumulated polar angle of the ellipse point (cos x, k sin x).
// For k = 0 the curve degenerates onto the real axis and the angle is identically 0.
// branch_steps receives the number of half-turn corrections applied (signed).
inline double unwrapped_tan_angle(double k, double x, int* branch_steps = nullptr) {
    if (k == 0.0) {
        if (branch_steps) *branch_steps = 0;
        return 0.0;
    }
    const double n = std::floor(x / M_PI + 0.5);
    const double r = x - n * M_PI; // [-pi/2, pi/2)
    if (branch_steps) *branch_steps = static_cast<int>(n);
    double principal;
    if (std::fabs(std::fabs(r) - M_PI / 2) < 1e-300) {
        principal = (r > 0 ? 1.0 : -1.0) * (k > 0 ? 1.0 : -1.0) * M_PI / 2;
    } else {
        principal = std::atan(k * std::tan(r));
    }
    return principal + n * M_PI * (k > 0 ? 1.0 : -1.0);
}

} // namespace spinphase
