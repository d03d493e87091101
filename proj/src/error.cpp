#include "rssiloc/error.hpp"

namespace rssiloc {

ErrorCategory category_of(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument:
      return ErrorCategory::Usage;
    case ErrorCode::CoincidentCenters:
    case ErrorCode::EqualDistances:
    case ErrorCode::EmptyInput:
    case ErrorCode::NonPositiveDistance:
    case ErrorCode::NonPositiveAlpha:
    case ErrorCode::InsufficientAnchors:
    case ErrorCode::NoAlphaSamples:
    case ErrorCode::EmptyDatabase:
    case ErrorCode::TooFewTargets:
    case ErrorCode::TooFewUsablePairs:
      return ErrorCategory::EstimationFailure;
    case ErrorCode::AnchorAtCalibrationPoint:
    case ErrorCode::PositionOutOfBounds:
    case ErrorCode::PositionOnAnchor:
    case ErrorCode::MalformedDatabase:
    case ErrorCode::MalformedTrace:
    case ErrorCode::MalformedAnchors:
    case ErrorCode::MalformedGroundTruth:
    case ErrorCode::MalformedConfig:
    case ErrorCode::MissingGroundTruth:
    case ErrorCode::EmptyTrace:
    case ErrorCode::UnknownAnchorInTrace:
      return ErrorCategory::MalformedInput;
    case ErrorCode::IoFailure:
      return ErrorCategory::Io;
  }
  return ErrorCategory::MalformedInput;
}

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::CoincidentCenters: return "CoincidentCenters";
    case ErrorCode::EqualDistances: return "EqualDistances";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NonPositiveDistance: return "NonPositiveDistance";
    case ErrorCode::NonPositiveAlpha: return "NonPositiveAlpha";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InsufficientAnchors: return "InsufficientAnchors";
    case ErrorCode::AnchorAtCalibrationPoint: return "AnchorAtCalibrationPoint";
    case ErrorCode::NoAlphaSamples: return "NoAlphaSamples";
    case ErrorCode::EmptyDatabase: return "EmptyDatabase";
    case ErrorCode::TooFewTargets: return "TooFewTargets";
    case ErrorCode::TooFewUsablePairs: return "TooFewUsablePairs";
    case ErrorCode::PositionOutOfBounds: return "PositionOutOfBounds";
    case ErrorCode::PositionOnAnchor: return "PositionOnAnchor";
    case ErrorCode::MalformedDatabase: return "MalformedDatabase";
    case ErrorCode::MalformedTrace: return "MalformedTrace";
    case ErrorCode::MalformedAnchors: return "MalformedAnchors";
    case ErrorCode::MalformedGroundTruth: return "MalformedGroundTruth";
    case ErrorCode::MalformedConfig: return "MalformedConfig";
    case ErrorCode::MissingGroundTruth: return "MissingGroundTruth";
    case ErrorCode::EmptyTrace: return "EmptyTrace";
    case ErrorCode::UnknownAnchorInTrace: return "UnknownAnchorInTrace";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

std::string_view to_string(ErrorCategory category) noexcept {
  switch (category) {
    case ErrorCategory::Usage: return "usage";
    case ErrorCategory::MalformedInput: return "malformed_input";
    case ErrorCategory::EstimationFailure: return "estimation_failure";
    case ErrorCategory::Io: return "io_failure";
  }
  return "unknown";
}

}  // namespace rssiloc
