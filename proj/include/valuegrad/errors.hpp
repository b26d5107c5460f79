#pragma once

#include <stdexcept>
#include <string>

namespace valuegrad {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
  using Error::Error;
};

// Gradient or Hessian requested where the function is not differentiable.
class NonsmoothPoint : public Error {
public:
  using Error::Error;
};

class UnsupportedVariant : public Error {
public:
  using Error::Error;
};

// Non-SPD operator detected by conjugate gradient, or an inner solve that did
// not converge.
class SolverBreakdown : public Error {
public:
  using Error::Error;
};

}  // namespace valuegrad
