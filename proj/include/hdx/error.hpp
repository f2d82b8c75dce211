#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hdx {

enum class ErrorCode {
  InvalidArgument,
  NonPure,
  ZeroMeasure,
  DuplicateFace,
  NotAFace,
  TopFace,
  BadLevel,
  TooSmallT,
  EmptyGraph,
  IsolatedVertex,
  NotBipartite,
  TooLargeForExact,
  NonPositiveAlpha,
  DegenerateColoring,
  NotAHomomorphism,
  TooLarge,
  NotAGroup,
  NotPure,
  NotSymmetricGenSet,
  NotNormal,
  NotSubgroup,
  UnsatisfiedBase,
  BadKindForFace,
  Unmeasurable,
  NotAnEdge,
  NotACocycle,
  Disconnected,
  EmptySide,
  EmptyResult,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Every library failure is reported through this type; `code()` identifies
/// the contract that was violated and `what()` carries the witness.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hdx
