#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace ahcurv {

enum class ErrorKind {
  DimensionTooSmall,
  ShapeError,
  DegenerateSample,
  DegeneratePlane,
  InvalidArgument,
  NoSolution,
  NumericalFailure,
  HypothesisNotSatisfied,
  Inconclusive,
  ParseError,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` distinguishes the failure.
/// HypothesisNotSatisfied and Inconclusive carry the measured quantity that
/// triggered them in `measured()`.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::optional<double> measured = std::nullopt)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), measured_(measured) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<double> measured() const noexcept { return measured_; }

 private:
  ErrorKind kind_;
  std::optional<double> measured_;
};

}  // namespace ahcurv
