#pragma once

#include <stdexcept>
#include <string>

namespace wdf {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Component value or control parameter outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A reactive element (or a tree containing one) was used before prepare().
class UnpreparedError : public Error {
 public:
  using Error::Error;
};

/// Invalid connection tree: double parent, cycle, dimension mismatch.
class WiringError : public Error {
 public:
  using Error::Error;
};

/// Linear network with no unique solution; names the offending node.
class SingularNetworkError : public Error {
 public:
  SingularNetworkError(const std::string& what, int node)
      : Error(what), node_(node) {}
  int node() const noexcept { return node_; }

 private:
  int node_;
};

/// Iterative solve did not converge within its budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Name lookup in the circuit registry failed.
class UnknownCircuitError : public Error {
 public:
  using Error::Error;
};

}  // namespace wdf
