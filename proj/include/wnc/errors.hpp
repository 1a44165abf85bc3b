#pragma once

#include <stdexcept>
#include <string>

namespace wnc {

// Domain errors: the request is outside the mathematical domain of the
// operation.  The CLI maps these to exit code 2.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroScaling : DomainError {
  ZeroScaling() : DomainError("scaling parameter z must be nonzero") {}
};

struct SectorViolation : DomainError {
  explicit SectorViolation(const std::string& what) : DomainError(what) {}
};

struct NonpositiveTime : DomainError {
  NonpositiveTime() : DomainError("time parameter must be positive") {}
};

struct RaisedNormOfNonSchwartz : DomainError {
  RaisedNormOfNonSchwartz()
      : DomainError("|.|_p with p > 0 requires a finite Hermite span; "
                    "indicators are not Schwartz functions") {}
};

struct DivergentTheta : DomainError {
  explicit DivergentTheta(const std::string& what) : DomainError(what) {}
};

struct DomainViolation : DomainError {
  explicit DomainViolation(const std::string& what) : DomainError(what) {}
};

// Numerical errors: the request is admissible but the computation could not
// reach the requested accuracy.  The CLI maps these to exit code 3.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadratureFailure : NumericalError {
  explicit QuadratureFailure(const std::string& what) : NumericalError(what) {}
};

struct SingularGram : NumericalError {
  explicit SingularGram(const std::string& what) : NumericalError(what) {}
};

}  // namespace wnc
