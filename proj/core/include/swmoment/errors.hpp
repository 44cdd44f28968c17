#pragma once

#include <stdexcept>
#include <string>

namespace swm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes do not agree (spinor vs. representation, coefficient vectors vs. algebra).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Top two singular values of a su(2) (x) H coefficient matrix are too close to pick a cone point.
class AmbiguousProjection : public Error {
 public:
  using Error::Error;
};

// |Gamma_phi mu(phi)| vanished while mu(phi) did not: a criterion counterexample candidate.
class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class NotOnCone : public Error {
 public:
  using Error::Error;
};

// Lattice domain cannot host the requested stencil or radius.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace swm
