#pragma once

#include <stdexcept>
#include <string>

namespace photon_slh {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class TensorCapError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Model data violating an SLH type invariant (non-unitary S, non-Hermitian H0, ...).
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotFactorizedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularLoopError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Time grid too short or too coarse for the requested shaping method.
class GridError : public std::runtime_error {
 public:
  GridError(const std::string& what, double suggested_span)
      : std::runtime_error(what), suggested_span_(suggested_span) {}

  // Span that would satisfy the check, or 0 when a finer grid is needed instead.
  double suggested_span() const noexcept { return suggested_span_; }

 private:
  double suggested_span_;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace photon_slh
