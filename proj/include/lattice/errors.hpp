#pragma once

#include <stdexcept>
#include <string>

namespace lattice {

struct LatticeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A computed polynomial root sits on the unit circle away from z=1; the
// couplings are numerically degenerate and no localized square root can be
// classified.
struct RootClassificationError : LatticeError {
    using LatticeError::LatticeError;
};

struct NonRealCoefficient : LatticeError {
    using LatticeError::LatticeError;
};

struct DimensionMismatch : LatticeError {
    using LatticeError::LatticeError;
};

struct InvalidCoupling : LatticeError {
    using LatticeError::LatticeError;
};

struct InfeasibleFamily : LatticeError {
    using LatticeError::LatticeError;
};

struct QuadratureNonConvergence : LatticeError {
    using LatticeError::LatticeError;
};

struct DomainError : LatticeError {
    using LatticeError::LatticeError;
};

struct RegimeError : LatticeError {
    using LatticeError::LatticeError;
};

struct RangeError : LatticeError {
    using LatticeError::LatticeError;
};

struct IndexError : LatticeError {
    using LatticeError::LatticeError;
};

struct InsufficientSamples : LatticeError {
    using LatticeError::LatticeError;
};

struct BlowUp : LatticeError {
    using LatticeError::LatticeError;
};

struct GridMismatch : LatticeError {
    using LatticeError::LatticeError;
};

}  // namespace lattice
