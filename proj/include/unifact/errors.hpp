#pragma once

#include <stdexcept>
#include <string>

namespace unifact {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// matrix-core
struct NotHermitian : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct NotUnitary : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct BadFormat : Error { using Error::Error; };

// projection-lattice
struct NotAProjection : Error { using Error::Error; };
struct RankMismatch : Error { using Error::Error; };
struct NotSubprojection : Error { using Error::Error; };

// finite-factorizer
struct NotInCorner : Error { using Error::Error; };
struct TraceMismatch : Error { using Error::Error; };
struct NumericalDegeneracy : Error { using Error::Error; };
struct OddCornerRank : Error { using Error::Error; };
struct DivisibilityError : Error { using Error::Error; };

// sinf-model
struct NotABijection : Error { using Error::Error; };
struct NotAPartition : Error { using Error::Error; };
struct NotInfinite : Error { using Error::Error; };
struct DegenerateOrientation : Error { using Error::Error; };
struct NotCarriable : Error { using Error::Error; };
struct NotReversible : Error { using Error::Error; };

// word-calculus
struct MixedPayloads : Error { using Error::Error; };
struct IncompatibleProjections : Error { using Error::Error; };
struct MissingWitness : Error { using Error::Error; };
struct OracleExhausted : Error { using Error::Error; };

} // namespace unifact
