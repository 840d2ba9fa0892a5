#pragma once

#include <array>

#include "spinphase/linalg.hpp"

namespace spinphase {

// Physical parameters of the two-spin model (hbar = 1, B carries the full
// energy scale). J > 0 is antiferromagnetic coupling.
struct ModelParams {
    double B = 1.0;     // field magnitude, >= 0
    double theta = 0.0; // field tilt angle, in [0, pi]
    double omega = 0.0; // field rotation frequency
    double J = 0.0;     // exchange coupling, either sign
};

// Throws ConfigError if fields are nonfinite or outside their ranges.
void validate(const ModelParams& p);

// Generalized Rabi frequency and mixing angle,
//   alpha = sqrt(4 B^2 sin^2 theta + (2 B cos theta - omega)^2),
//   tan eta = 2 B sin theta / (2 B cos theta - omega), eta in [0, pi].
struct DerivedAngles {
    double alpha = 0.0;
    double eta = 0.0;
};

// Two-spin pure state in the ordered product basis (|00>, |01>, |10>, |11>)
// with |0> = (1,0)^T, |1> = (0,1)^T.
struct PureState4 {
    std::array<Complex, 4> f{};

    double norm() const;
};

// <x|y>
Complex inner(const PureState4& x, const PureState4& y);
PureState4 normalized(PureState4 s);

// Named states used throughout.
PureState4 ket00();
PureState4 ket01();
PureState4 ket10();
PureState4 ket11();
PureState4 singlet(); // (|01> - |10>)/sqrt(2)

// Lab-frame Hamiltonian matrix: diagonal (J+2Bcos, -J, -J, J-2Bcos), field
// couplings B sin(theta) e^{-/+ i omega t}, exchange 2J between the middle pair.
ComplexMatrix hamiltonian_lab(const ModelParams& p, double t);

// Rotating-frame generator: constant, real symmetric; diagonal picks up -/+omega
// on the outer components and the couplings lose their time dependence.
ComplexMatrix hamiltonian_rotating(const ModelParams& p);

// Throws UndefinedEtaError at alpha = 0 (theta = 0 with omega = 2B).
DerivedAngles derived_angles(const ModelParams& p);

// Map rotating-frame amplitudes back to the lab frame:
// (f1, f2, f3, f4) = (fbar1 e^{-i omega t}, fbar2, fbar3, fbar4 e^{i omega t}).
PureState4 lab_from_rotating(const PureState4& fbar, double omega, double t);

} // namespace spinphase
