#pragma once

#include <stdexcept>
#include <string>

namespace intertwine {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied value violates a documented precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// ½N|^β_α − r vanishes on a lattice edge: μ_β/μ_α is singular there.
class ZeroDenominator : public Error {
public:
    using Error::Error;
};

/// Two recursion paths to the same K-type disagree beyond tolerance.
class PathInconsistency : public Error {
public:
    using Error::Error;
};

/// Γ evaluated at a nonpositive integer.
class PoleAtGamma : public Error {
public:
    using Error::Error;
};

/// The spectral function is undefined at a K-type for this order.
class PoleAtKType : public Error {
public:
    using Error::Error;
};

/// No K-type in the probe range yields a finite, nonzero quotient.
class NoProbeAvailable : public Error {
public:
    using Error::Error;
};

/// The quadrature grid cannot resolve the requested degree.
class GridTooCoarse : public Error {
public:
    using Error::Error;
};

}  // namespace intertwine
