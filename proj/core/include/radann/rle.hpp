#pragma once

#include <cstdint>
#include <vector>

#include "radann/types.hpp"

namespace radann {

/// Row-major run-length encoding of a binary raster. counts alternate
/// zero-runs and one-runs, starting with a (possibly empty) zero-run.
struct RleMask {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint32_t> counts;

  friend bool operator==(const RleMask&, const RleMask&) = default;
};

RleMask rle_encode(const BinaryMask& mask);
/// Throws kParseError when the runs do not cover rows * cols exactly.
BinaryMask rle_decode(const RleMask& rle);

}  // namespace radann
