#pragma once

#include <stdexcept>

namespace mpfam {

/// Base class of every exception thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A part size or uniformity was zero or negative.
struct ZeroOrNegativeError : Error { using Error::Error; };

/// Some uniformity k_s exceeds its part size n_s.
struct UniformityTooLargeError : Error { using Error::Error; };

/// Operands do not belong to the same part structure, or a set violates the
/// per-part size constraints of the structure it is used with.
struct StructureMismatchError : Error { using Error::Error; };

/// Materializing the layer would exceed the configured member cap.
struct LayerTooLargeError : Error { using Error::Error; };

/// Shift index violates 1 <= i < j <= n_t, or t is out of range.
struct InvalidShiftIndexError : Error { using Error::Error; };

/// Operation requires a non-trivially intersecting family.
struct NotNontrivialError : Error { using Error::Error; };

/// The (t, S) pair is excluded: no non-trivially intersecting candidate lives there.
struct ExcludedPairError : Error { using Error::Error; };

/// The ell vector is not admissible for the given distinguished part.
struct InvalidEllError : Error { using Error::Error; };

/// Two triangle witnesses share a part whose uniformity cannot hold both.
struct InfeasibleWitnessesError : Error { using Error::Error; };

/// Building the graph would exceed the vertex cap.
struct TooLargeError : Error { using Error::Error; };

/// binomial() called with a negative row index.
struct NegativeNError : Error { using Error::Error; };

/// Scalar argument outside the documented domain.
struct OutOfRangeError : Error { using Error::Error; };

/// Argument combination outside the documented domain.
struct BadParametersError : Error { using Error::Error; };

/// No admissible (t, S) pair exists for this structure.
struct NoAdmissiblePairError : Error { using Error::Error; };

/// Malformed or schema-violating input document.
struct ParseError : Error { using Error::Error; };

}  // namespace mpfam
