#pragma once

#include <stdexcept>
#include <string>

namespace spinphase {

// Base class for all numeric-domain failures raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input matrix fails the Hermitian precondition; carries the worst |a_ij - conj(a_ji)|.
struct NonHermitianError : Error {
    double max_asymmetry;
    explicit NonHermitianError(double defect)
        : Error("matrix is not Hermitian, max asymmetry = " + std::to_string(defect)),
          max_asymmetry(defect) {}
};

// alpha = 0 (resonant degenerate point): the mixing angle eta is undefined.
struct UndefinedEtaError : Error {
    UndefinedEtaError() : Error("alpha = 0: mixing angle eta is undefined") {}
};

// alpha = 0: the analytic mode basis is undefined; use the exponential propagator.
struct UndefinedBasisError : Error {
    UndefinedBasisError() : Error("alpha = 0: analytic mode basis is undefined") {}
};

// Phase of a (near-)vanishing overlap requested.
struct UndefinedPhaseError : Error {
    using Error::Error;
};

// Density-operator eigenvalue crossing encountered where the caller forbade one.
struct DegeneracyError : Error {
    using Error::Error;
};

// Time grid too coarse for the requested operation.
struct ResolutionError : Error {
    using Error::Error;
};

// Bad scenario configuration or command usage.
struct ConfigError : Error {
    using Error::Error;
};

} // namespace spinphase
