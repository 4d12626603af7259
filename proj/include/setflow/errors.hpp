#pragma once

#include <stdexcept>
#include <string>

namespace setflow {

/// Bad caller-supplied data: malformed bodies, incompatible grids, out-of-range
/// parameters. CLI exit code 3.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A mathematical invariant that the theory guarantees was violated at run
/// time (numerical convexity loss, infeasible radius program, failed body
/// generation). Signals a defect, not data to repair. CLI exit code 2.
class InvariantError : public std::runtime_error {
public:
    explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

// Input-side conditions.
struct NonConvexInput : InputError { using InputError::InputError; };
struct DegenerateInput : InputError { using InputError::InputError; };
struct GridMismatch : InputError { using InputError::InputError; };
struct SingularOperator : InputError { using InputError::InputError; };
struct NonPositiveScale : InputError { using InputError::InputError; };
struct NotRotation : InputError { using InputError::InputError; };
struct GridIncompatible : InputError { using InputError::InputError; };
struct NegativeTime : InputError { using InputError::InputError; };
struct NotStableOperator : InputError { using InputError::InputError; };
struct BadOrder : InputError { using InputError::InputError; };
struct NotPeriodic : InputError { using InputError::InputError; };
struct NotInManifold : InputError { using InputError::InputError; };
struct DegenerateBody : InputError { using InputError::InputError; };

// Invariant-side conditions.
struct LPInfeasible : InvariantError { using InvariantError::InvariantError; };
struct ConvexityLost : InvariantError { using InvariantError::InvariantError; };
struct GenerationFailed : InvariantError { using InvariantError::InvariantError; };

}  // namespace setflow
