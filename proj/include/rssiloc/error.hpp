#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rssiloc {

/// Every failure the library can report. Grouped by the category the CLI
/// maps to an exit code (see `category_of`).
enum class ErrorCode {
  // precondition violations of the numeric core
  CoincidentCenters,
  EqualDistances,
  EmptyInput,
  NonPositiveDistance,
  NonPositiveAlpha,
  InvalidArgument,
  // estimation
  InsufficientAnchors,
  AnchorAtCalibrationPoint,
  NoAlphaSamples,
  EmptyDatabase,
  TooFewTargets,
  TooFewUsablePairs,
  // simulation
  PositionOutOfBounds,
  PositionOnAnchor,
  // input files
  MalformedDatabase,
  MalformedTrace,
  MalformedAnchors,
  MalformedGroundTruth,
  MalformedConfig,
  MissingGroundTruth,
  EmptyTrace,
  UnknownAnchorInTrace,
  // filesystem
  IoFailure,
};

enum class ErrorCategory {
  Usage,
  MalformedInput,
  EstimationFailure,
  Io,
};

ErrorCategory category_of(ErrorCode code) noexcept;
std::string_view to_string(ErrorCode code) noexcept;
std::string_view to_string(ErrorCategory category) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return category_of(code_); }

 private:
  ErrorCode code_;
};

}  // namespace rssiloc
