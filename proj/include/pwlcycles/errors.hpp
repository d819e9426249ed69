// Exception types shared by every module.
#pragma once

#include <stdexcept>
#include <string>

namespace pwlcycles {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error { using Error::Error; };
class ParseError : public Error { using Error::Error; };

// exact_algebra
class ZeroPolynomial : public Error {
 public:
  ZeroPolynomial() : Error("operation undefined for the zero polynomial") {}
};
class NotSquareFree : public Error {
 public:
  NotSquareFree() : Error("polynomial is not square-free") {}
};

// canonical_form / bound_engine
class TangentSeparationLine : public Error {
 public:
  TangentSeparationLine()
      : Error("a12^L * a12^R <= 0: no transversal crossing, no periodic orbits") {}
};
class HypothesisViolation : public Error { using Error::Error; };
class DegenerateElimination : public Error { using Error::Error; };
class InconclusiveError : public Error { using Error::Error; };

// halfmap_numerics
class NoReturn : public Error { using Error::Error; };
class ToleranceFailure : public Error { using Error::Error; };
class SingularCrossing : public Error { using Error::Error; };

}  // namespace pwlcycles
