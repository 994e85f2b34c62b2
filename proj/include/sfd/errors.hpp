#pragma once

#include <stdexcept>
#include <string>

namespace sfd {

/// Base class for every error raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input / configuration problems (a run cannot even start).
struct ConfigError : Error { using Error::Error; };
struct NonUniformMesh : ConfigError { using ConfigError::ConfigError; };
struct NonPositiveDensity : ConfigError { using ConfigError::ConfigError; };
struct AsymmetricDatum : ConfigError { using ConfigError::ConfigError; };
struct DegenerateGrid : ConfigError { using ConfigError::ConfigError; };
struct UnsupportedOrder : ConfigError { using ConfigError::ConfigError; };

// Contract violations between components.
struct IndexOutOfRange : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct HistoryLengthMismatch : Error { using Error::Error; };
struct LabelOutOfRange : Error { using Error::Error; };

// State violations detected while computing.
struct NonPositiveG : Error { using Error::Error; };
struct MassMismatch : Error { using Error::Error; };
struct OutOfValidityRange : Error { using Error::Error; };
struct EmptyWindow : Error { using Error::Error; };
struct NonPositiveValues : Error { using Error::Error; };
struct QuadratureSelfCheckFailure : Error { using Error::Error; };

// Solver failures (a run started but could not continue).
struct SolverError : Error { using Error::Error; };
struct SingularKkt : SolverError { using SolverError::SolverError; };
struct NoConvergence : SolverError { using SolverError::SolverError; };
struct PositivityLoss : SolverError { using SolverError::SolverError; };

}  // namespace sfd
