#include "hdx/error.hpp"

namespace hdx {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPure: return "NonPure";
    case ErrorCode::ZeroMeasure: return "ZeroMeasure";
    case ErrorCode::DuplicateFace: return "DuplicateFace";
    case ErrorCode::NotAFace: return "NotAFace";
    case ErrorCode::TopFace: return "TopFace";
    case ErrorCode::BadLevel: return "BadLevel";
    case ErrorCode::TooSmallT: return "TooSmallT";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::IsolatedVertex: return "IsolatedVertex";
    case ErrorCode::NotBipartite: return "NotBipartite";
    case ErrorCode::TooLargeForExact: return "TooLargeForExact";
    case ErrorCode::NonPositiveAlpha: return "NonPositiveAlpha";
    case ErrorCode::DegenerateColoring: return "DegenerateColoring";
    case ErrorCode::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotAGroup: return "NotAGroup";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::NotSymmetricGenSet: return "NotSymmetricGenSet";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::NotSubgroup: return "NotSubgroup";
    case ErrorCode::UnsatisfiedBase: return "UnsatisfiedBase";
    case ErrorCode::BadKindForFace: return "BadKindForFace";
    case ErrorCode::Unmeasurable: return "Unmeasurable";
    case ErrorCode::NotAnEdge: return "NotAnEdge";
    case ErrorCode::NotACocycle: return "NotACocycle";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::EmptySide: return "EmptySide";
    case ErrorCode::EmptyResult: return "EmptyResult";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace hdx
