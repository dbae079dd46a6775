#pragma once

#include <stdexcept>
#include <string>

namespace warpgeo {

// Base of every error raised by the library. The CLI maps InvalidArgument to
// exit status 2 and everything else to 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Point (or finite-difference stencil) outside the chart domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Metric not positive definite, or too badly conditioned to invert.
class SingularMetric : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an identity check is not met at the point.
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace warpgeo
