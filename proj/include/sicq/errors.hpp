#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sicq {

// Base for every error raised by the library. The C API maps each subclass to
// a distinct status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Input violates a domain invariant (non-Hermitian, not PSD, POVM does not
// close, frame not verified, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Dimension or index outside what an operation supports.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// A stated precondition on the *class* of input failed, e.g. a conditional
// matrix that does not come from rank-1 ground projectors.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// q(j) fell outside [0, 1] by more than the allowed slack.
class UrungleichungViolation : public Error {
 public:
  UrungleichungViolation(const std::string& what, std::size_t outcome, double value)
      : Error(what), outcome_(outcome), value_(value) {}
  std::size_t outcome() const noexcept { return outcome_; }
  double value() const noexcept { return value_; }

 private:
  std::size_t outcome_;
  double value_;
};

class SearchFailed : public Error {
 public:
  SearchFailed(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t byte_offset)
      : Error(what), byte_offset_(byte_offset) {}
  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

}  // namespace sicq
