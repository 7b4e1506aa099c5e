#pragma once

#include <stdexcept>
#include <string>

namespace csl {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Family parameters violate a constraint; the message names it.
class InvalidParams : public Error {
public:
    using Error::Error;
};

/// Induced metric is (numerically) singular at the evaluation point.
class DegenerateMetric : public Error {
public:
    using Error::Error;
};

class WrongDimension : public Error {
public:
    using Error::Error;
};

class ZeroMeanCurvature : public Error {
public:
    using Error::Error;
};

class NoOracle : public Error {
public:
    using Error::Error;
};

class EmptySampleSet : public Error {
public:
    using Error::Error;
};

class NonpositiveEpsilon : public Error {
public:
    using Error::Error;
};

/// Operands disagree in chart dimension or tensor shape.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Point is farther than the configured tolerance from the unit sphere.
class OffSphere : public Error {
public:
    using Error::Error;
};

}  // namespace csl
