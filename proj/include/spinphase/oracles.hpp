#pragma once

#include "spinphase/phases.hpp"

namespace spinphase {

// Closed-form value with the bookkeeping of its principal-branch treatment.
// The arctan pieces of the closed forms are evaluated as two-argument
// arctangents continued from tau = 0, so the value is smooth in tau;
// branch_corrections counts the branch steps that continuation applied.
// validity_window is the interval on which the expression is certified against
// the numeric pipeline (it ends at the first reduced-density degeneracy for
// the |01> subsystem formulas); evaluation beyond it still returns a value.
// boundary_flag marks evaluation at a formula boundary (vanishing denominator
// in the square-root ratio form).
struct OracleResult {
    double value = 0.0;
    double window_begin = 0.0;
    double window_end = 0.0;
    int branch_corrections = 0;
    bool boundary_flag = false;
};

// Composite-system geometric phase for initial |01>:
//   atan2-continued(sin 4J tau, cos^2 eta + sin^2 eta cos(alpha tau) + cos 4J tau) - 2 J tau.
OracleResult gamma_ab_01(const ModelParams& p, double tau);

// Subsystem phases for initial |01>. The ratio sqrt(1-cos)/sqrt(1+cos) is
// evaluated as the signed tan(alpha tau / 2) continuation, which keeps the two
// formulas exact mirror images (their sum vanishes identically).
OracleResult gamma_a_01(const ModelParams& p, double tau);
OracleResult gamma_b_01(const ModelParams& p, double tau);

// Worked |00> case: composite phase and the common subsystem phase, with
// gamma_ab_00 = 2 * gamma_sub_00 identically.
OracleResult gamma_ab_00(const ModelParams& p, double tau);
OracleResult gamma_sub_00(const ModelParams& p, double tau);

enum class InitialCase { Ket01, Ket00 };

// Closed-form reduced density operator of one subsystem.
ComplexMatrix rho_closed_form(InitialCase initial, const ModelParams& p, double t,
                              Subsystem which);

} // namespace spinphase
