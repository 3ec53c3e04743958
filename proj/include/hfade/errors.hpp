#pragma once

#include <stdexcept>
#include <string>

namespace hfade {

// Base for everything the library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument of a gamma function landed on (or too close to) a non-positive integer.
struct PoleError : Error {
    using Error::Error;
};

// No admissible vertical contour abscissa for a Mellin-Barnes integral.
struct ContourError : Error {
    using Error::Error;
};

// Quadrature tail / refinement did not reach the requested tolerance.
struct ConvergenceError : Error {
    using Error::Error;
};

// Series coefficient recursion exceeded representable magnitude.
struct CoefficientOverflow : Error {
    using Error::Error;
};

// Coefficients were computed for a different parameter set.
struct FingerprintMismatch : Error {
    using Error::Error;
};

// Term-count search hit its cap without meeting the tolerance.
struct NotConverged : Error {
    using Error::Error;
};

// A formula precondition on the parameters is violated (e.g. beta-function pole).
struct DomainError : Error {
    using Error::Error;
};

// An evaluation was requested through a formula variant that has not been
// validated against the quadrature oracle.
struct ArgumentResolutionError : Error {
    using Error::Error;
};

// Numeric resolution of the asymptotic constants failed its self-check.
struct UnresolvedConstant : Error {
    using Error::Error;
};

// Closed form and independent oracle disagree beyond tolerance.
struct OracleMismatch : Error {
    using Error::Error;
};

// A probability-valued metric drifted outside [0,1] by more than its error estimate.
struct MetricRangeError : Error {
    using Error::Error;
};

}  // namespace hfade
