#ifndef QTC3D_ERRORS_HPP
#define QTC3D_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qtc3d {

// Base for everything thrown by the library. Subtypes split into two
// families for exit-code mapping: input errors (bad files, bad windows,
// wrong geometry) and analysis-domain errors (degenerate data, empty
// statistics).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputError : Error {
    using Error::Error;
};

struct AnalysisError : Error {
    using Error::Error;
};

// A vector or frame quantity fell below the degeneracy threshold.
struct DegenerateError : AnalysisError {
    using AnalysisError::AnalysisError;
};

// Malformed CSV content; `line` is 1-based.
struct ParseError : InputError {
    ParseError(const std::string& what, std::size_t line_no)
        : InputError(what + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
    std::size_t line;
};

// Sampling interval deviates from dt; `timestamp` is the offending sample time.
struct NonUniformSamplingError : InputError {
    NonUniformSamplingError(const std::string& what, double t)
        : InputError(what + " (at t=" + std::to_string(t) + ")"), timestamp(t) {}
    double timestamp;
};

struct TooShortError : InputError {
    using InputError::InputError;
};

struct OutOfRangeError : InputError {
    using InputError::InputError;
};

// Every sample of a trajectory is degenerate (e.g. the object never moves).
struct AllDegenerateError : AnalysisError {
    using AnalysisError::AnalysisError;
};

// A 2D-only calculus variant was asked to encode non-planar data.
struct NotPlanarError : InputError {
    using InputError::InputError;
};

struct EmptySequenceError : AnalysisError {
    using AnalysisError::AnalysisError;
};

struct DivisionByZeroError : AnalysisError {
    using AnalysisError::AnalysisError;
};

} // namespace qtc3d

#endif // QTC3D_ERRORS_HPP
