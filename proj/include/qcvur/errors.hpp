#pragma once

#include <stdexcept>
#include <string>

namespace qcvur {

// All library failures derive from Error so callers can catch one type.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error { using Error::Error; };
struct HermiticityError : Error { using Error::Error; };
struct ConvergenceError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct SubsystemError : Error { using Error::Error; };
struct DegeneracyError : Error { using Error::Error; };
struct DegenerateOperator : Error { using Error::Error; };
struct UsageError : Error { using Error::Error; };

// Raised when a measurement branch has probability below the skip threshold.
struct NullBranch : Error { using Error::Error; };

struct IoError : Error { using Error::Error; };

// An imaginary residue survived where the quantity is real analytically.
struct NumericalError : Error { using Error::Error; };

}  // namespace qcvur
