#pragma once

#include <stdexcept>

namespace banditsim {

struct BanditError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Instance construction or lookup problems.
struct InvalidInstanceError : BanditError { using BanditError::BanditError; };
struct MissingArmError : BanditError { using BanditError::BanditError; };
struct InconsistentInstanceError : BanditError { using BanditError::BanditError; };

// Bad numeric arguments (rho, alpha, eta, ...).
struct InvalidParameterError : BanditError { using BanditError::BanditError; };

// Arm-memory violations.
struct EmptyMemoryError : BanditError { using BanditError::BanditError; };
struct CapacityError : BanditError { using BanditError::BanditError; };
struct UnsupportedCapacityError : BanditError { using BanditError::BanditError; };

// Engine schedule misuse.
struct ScheduleExhaustedError : BanditError { using BanditError::BanditError; };

// Domain violations of the closed-form schedule quantities.
struct PreconditionError : BanditError { using BanditError::BanditError; };

// CLI / experiment configuration problems.
struct UsageError : BanditError { using BanditError::BanditError; };

}  // namespace banditsim
