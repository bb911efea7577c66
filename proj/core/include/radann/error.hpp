#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace radann {

enum class ErrorCode {
  kInvalidConfig,
  kAngleOutOfRange,
  kTargetOutOfRange,
  kAmbiguousVelocity,
  kDimensionMismatch,
  kWindowTooLarge,
  kBinOutOfRange,
  kEmptyCloud,
  kNonConvergence,
  kDegenerateCluster,
  kSingularCovariance,
  kGridTooSmall,
  kEmptyMask,
  kRayParallelToGround,
  kBehindCamera,
  kAtOrigin,
  kMissingHistory,
  kImplausibleVelocity,
  kAssociationTooFar,
  kSeedAssociationFailed,
  kBinOverflow,
  kEmptySet,
  kPointOutOfBounds,
  kParseError,
  kValidationError,
  kIoError,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying one of the library's error codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

  ErrorCode code() const noexcept { return code_; }
  /// Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

/// Non-fatal condition attached to a result (aliasing, clamping, missing history...).
struct Diagnostic {
  ErrorCode code;
  std::string message;
};

using Diagnostics = std::vector<Diagnostic>;

inline bool has_diagnostic(const Diagnostics& diags, ErrorCode code) {
  for (const auto& d : diags) {
    if (d.code == code) return true;
  }
  return false;
}

}  // namespace radann
