#pragma once

#include <string>
#include <vector>

#include "spinphase/oracles.hpp"

namespace spinphase {

// One verification check: named, with its worst observed distance against the
// pinned threshold.
struct CheckResult {
    std::string name;
    double max_distance = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::string detail;
};

struct CheckOptions {
    // Substring filter on check names; empty runs everything.
    std::string only;
    // Deliberately corrupts the exchange entries in one propagation route so
    // the propagator-agreement check must fail (mutation self-test).
    bool inject_exchange_sign_flip = false;
};

// Runs the verification grid and returns one result per check.
std::vector<CheckResult> run_verification(const CheckOptions& opts = {});

// Helper shared with the unit tests: eig/expm property sweep over `cases`
// random Hermitian matrices. Returns the worst residual seen across the
// reconstruction (1e-9), unitarity (1e-10) and group-property (1e-9) checks,
// each normalized by its own tolerance (so < 1 means all pass).
double linalg_property_sweep(int cases, unsigned seed);

} // namespace spinphase
