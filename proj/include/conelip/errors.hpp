#pragma once
#include <stdexcept>
#include <string>

namespace conelip {

// Base of every error this library throws. Two families matter to callers:
// ValidationError (bad input, CLI exit 1) and SolverError (a numerical
// routine gave up, CLI exit 3).
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ValidationError : Error {
    using Error::Error;
};

struct SolverError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

// metric-core
struct TriangleViolation : ValidationError {
    int i, j, k;
    TriangleViolation(int i_, int j_, int k_)
        : ValidationError("triangle inequality violated: dist(" + std::to_string(i_) + "," +
                          std::to_string(j_) + ") > dist(" + std::to_string(i_) + "," +
                          std::to_string(k_) + ") + dist(" + std::to_string(k_) + "," +
                          std::to_string(j_) + ")"),
          i(i_), j(j_), k(k_) {}
};

struct DuplicatePoint : ValidationError {
    int i, j;
    DuplicatePoint(int i_, int j_)
        : ValidationError("points " + std::to_string(i_) + " and " + std::to_string(j_) +
                          " coincide (dist < 1e-12)"),
          i(i_), j(j_) {}
};

struct BadDimension : ValidationError {
    using ValidationError::ValidationError;
};

struct MisalignedField : ValidationError {
    using ValidationError::ValidationError;
};

struct BasepointMissing : ValidationError {
    using ValidationError::ValidationError;
};

// mcshane-extension
struct NotAnExtension : ValidationError {
    using ValidationError::ValidationError;
};

// cone-ph
struct DegeneratePair : ValidationError {
    using ValidationError::ValidationError;
};

struct DirectionNotRepresented : ValidationError {
    using ValidationError::ValidationError;
};

struct RaySystemMismatch : ValidationError {
    using ValidationError::ValidationError;
};

struct EmptySubcone : ValidationError {
    using ValidationError::ValidationError;
};

struct NonzeroAtBasepoint : ValidationError {
    using ValidationError::ValidationError;
};

// freespace-norms
struct NonUnitSupport : ValidationError {
    using ValidationError::ValidationError;
};

struct MatrixSpaceUnsupported : ValidationError {
    using ValidationError::ValidationError;
};

struct DependentGenerators : ValidationError {
    using ValidationError::ValidationError;
};

struct NotScalingClosed : ValidationError {
    using ValidationError::ValidationError;
};

// lp-kernel
struct Unbalanced : ValidationError {
    using ValidationError::ValidationError;
};

struct NumericalFailure : SolverError {
    using SolverError::SolverError;
};

struct NoConvergence : SolverError {
    using SolverError::SolverError;
};

}  // namespace conelip
