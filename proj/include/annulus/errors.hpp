#ifndef ANNULUS_ERRORS_HPP
#define ANNULUS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace annulus {

struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivideByZero : MathError {
    DivideByZero() : MathError("division by zero") {}
};

// pi is tracked as a grade in {0,1}; products of two pi-graded values never
// occur in the algebra, so hitting this means a misuse upstream.
struct GradeError : MathError {
    using MathError::MathError;
};

struct MixedGrade : MathError {
    using MathError::MathError;
};

struct SingularMatrix : MathError {
    SingularMatrix() : MathError("singular matrix") {}
};

struct SingularPivot : MathError {
    using MathError::MathError;
};

struct LevelExceeded : MathError {
    using MathError::MathError;
};

struct MissingDependency : MathError {
    using MathError::MathError;
};

struct DegreeViolation : MathError {
    using MathError::MathError;
};

struct AlgebraError : MathError {
    using MathError::MathError;
};

struct NonConvergence : MathError {
    using MathError::MathError;
};

struct StepUnderflow : MathError {
    using MathError::MathError;
};

struct Escaped : MathError {
    using MathError::MathError;
};

struct NoReturn : MathError {
    using MathError::MathError;
};

} // namespace annulus

#endif
