#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cancov {

enum class ErrorCode {
  BadInput,
  TriangleViolation,
  EmptySide,
  AsymmetricDistance,
  BadLadder,
  IndexOutOfLadder,
  EmptyComplement,
  BadParams,
  PackMismatch,
  LambdaNotDecaying,
  NotCovering,
  PreconditionKEnotRefining,
  NotARefinement,
  NotACover,
  NotBoundarySubset,
  BetaDoesNotCoverBoundary,
  LadderExhausted,
  PreconditionNotUniform,
  PreconditionNotSymmetric,
  PreconditionNotDiagonalNbhd,
  PreconditionNotC0,
  ProviderMismatch,
  ProviderInvariant,
  RefinementFailed,
  BoundaryInput,
  EmptyOuterSet,
  NotCylindrical,
  NonCylindricalPack,
  PreconditionNotOpen,
  StraddlerPrecondition,
  SlabTooThin,
  BadDeltas,
  NoCoordinates,
  BadConfig,
};

inline std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::TriangleViolation: return "TriangleViolation";
    case ErrorCode::EmptySide: return "EmptySide";
    case ErrorCode::AsymmetricDistance: return "AsymmetricDistance";
    case ErrorCode::BadLadder: return "BadLadder";
    case ErrorCode::IndexOutOfLadder: return "IndexOutOfLadder";
    case ErrorCode::EmptyComplement: return "EmptyComplement";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::PackMismatch: return "PackMismatch";
    case ErrorCode::LambdaNotDecaying: return "LambdaNotDecaying";
    case ErrorCode::NotCovering: return "NotCovering";
    case ErrorCode::PreconditionKEnotRefining: return "PreconditionKEnotRefining";
    case ErrorCode::NotARefinement: return "NotARefinement";
    case ErrorCode::NotACover: return "NotACover";
    case ErrorCode::NotBoundarySubset: return "NotBoundarySubset";
    case ErrorCode::BetaDoesNotCoverBoundary: return "BetaDoesNotCoverBoundary";
    case ErrorCode::LadderExhausted: return "LadderExhausted";
    case ErrorCode::PreconditionNotUniform: return "PreconditionNotUniform";
    case ErrorCode::PreconditionNotSymmetric: return "PreconditionNotSymmetric";
    case ErrorCode::PreconditionNotDiagonalNbhd: return "PreconditionNotDiagonalNbhd";
    case ErrorCode::PreconditionNotC0: return "PreconditionNotC0";
    case ErrorCode::ProviderMismatch: return "ProviderMismatch";
    case ErrorCode::ProviderInvariant: return "ProviderInvariant";
    case ErrorCode::RefinementFailed: return "RefinementFailed";
    case ErrorCode::BoundaryInput: return "BoundaryInput";
    case ErrorCode::EmptyOuterSet: return "EmptyOuterSet";
    case ErrorCode::NotCylindrical: return "NotCylindrical";
    case ErrorCode::NonCylindricalPack: return "NonCylindricalPack";
    case ErrorCode::PreconditionNotOpen: return "PreconditionNotOpen";
    case ErrorCode::StraddlerPrecondition: return "StraddlerPrecondition";
    case ErrorCode::SlabTooThin: return "SlabTooThin";
    case ErrorCode::BadDeltas: return "BadDeltas";
    case ErrorCode::NoCoordinates: return "NoCoordinates";
    case ErrorCode::BadConfig: return "BadConfig";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace cancov
