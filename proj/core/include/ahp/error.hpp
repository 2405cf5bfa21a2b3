#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ahp {

enum class ErrorCode {
  InvalidArgument,
  InvalidLabel,
  DuplicateLabel,
  MissingPair,
  DuplicatePair,
  NonPositiveValue,
  DiagonalJudgment,
  NotReciprocal,
  UnknownElement,
  ElementInBothSides,
  InvalidRho,
  NoConvergence,
  DimensionMismatch,
  UnknownNode,
  LabelMismatch,
  MissingMatrix,
  InvalidHierarchy,
  InvalidNetwork,
  BadClusterWeights,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base exception for every engine failure. The code is stable and is what
/// callers (CLI exit codes, HTTP status mapping) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised when an iterative method exhausts its budget. Carries the last
/// iterate so callers can inspect how far it got.
class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& message, std::vector<double> last_iterate)
      : Error(ErrorCode::NoConvergence, message), last_iterate_(std::move(last_iterate)) {}

  const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }

 private:
  std::vector<double> last_iterate_;
};

}  // namespace ahp
