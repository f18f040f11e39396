#pragma once

#include <stdexcept>
#include <string>

namespace qclab {

// Base class for all library errors so callers can catch everything in one place.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error { using Error::Error; };
struct DimensionCapError : Error { using Error::Error; };
struct IndexError : Error { using Error::Error; };
struct BranchCutError : Error { using Error::Error; };
struct InvalidAngleError : Error { using Error::Error; };
struct BudgetExceededError : Error { using Error::Error; };
struct FitDegenerateError : Error { using Error::Error; };
struct InsufficientDataError : Error { using Error::Error; };
struct NoConvergenceError : Error { using Error::Error; };
struct BracketError : Error { using Error::Error; };
struct HorizontalityViolationError : Error { using Error::Error; };
struct NotGeneratingError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace qclab
