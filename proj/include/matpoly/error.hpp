#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "matpoly/types.hpp"

namespace matpoly {

enum class ErrorKind {
  kInvalidInput,
  kResource,
  kDegenerateInput,
  kDegeneracyDetected,
  kNoRegularValue,
  kCorruptedReport,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& message)
      : Error(ErrorKind::kInvalidInput, message) {}
};

class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& message)
      : Error(ErrorKind::kResource, message) {}
};

class DegenerateInput : public Error {
 public:
  explicit DegenerateInput(const std::string& message)
      : Error(ErrorKind::kDegenerateInput, message) {}
};

/// A form vanished (numerically) at a nonzero point. The point is kept so the
/// caller can report it as a near-witness of degeneracy.
class DegeneracyDetected : public Error {
 public:
  DegeneracyDetected(const std::string& message, MatrixTuple witness)
      : Error(ErrorKind::kDegeneracyDetected, message),
        witness_(std::move(witness)) {}

  const MatrixTuple& witness() const noexcept { return witness_; }

 private:
  MatrixTuple witness_;
};

class NoRegularValue : public Error {
 public:
  explicit NoRegularValue(const std::string& message)
      : Error(ErrorKind::kNoRegularValue, message) {}
};

class CorruptedReport : public Error {
 public:
  explicit CorruptedReport(const std::string& message)
      : Error(ErrorKind::kCorruptedReport, message) {}
};

}  // namespace matpoly
