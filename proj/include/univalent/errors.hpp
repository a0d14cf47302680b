#pragma once

#include <stdexcept>
#include <string>

namespace univalent {

// Domain errors thrown by the workbench. Every precondition failure maps to
// one of these so callers (and tests) can catch the exact condition.

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// series
struct DivisionByZeroConstantTerm : Error { using Error::Error; };
struct NonzeroInnerConstant : Error { using Error::Error; };
struct NonUnitConstantTerm : Error { using Error::Error; };
struct InsufficientOrder : Error { using Error::Error; };
struct ExactPhaseUnsupported : Error { using Error::Error; };

// symbolic polynomials
struct StructureMismatch : Error { using Error::Error; };

// families
struct DilatationExceedsOne : Error { using Error::Error; };
struct ParameterOutOfRange : Error { using Error::Error; };
struct WrongClass : Error { using Error::Error; };

// functionals
struct InvalidPerturbation : Error { using Error::Error; };
struct PerturbationTooLarge : Error { using Error::Error; };

// Schwarzian / metrics
struct CriticalPointAtOrigin : Error { using Error::Error; };
struct GridTooCoarse : Error { using Error::Error; };
struct GridMismatch : Error { using Error::Error; };
struct HypothesisNotMet : Error { using Error::Error; };
struct UnsupportedFamily : Error { using Error::Error; };

// harness / CLI
struct ConfigError : Error { using Error::Error; };

} // namespace univalent
