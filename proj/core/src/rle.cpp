#include "radann/rle.hpp"

#include "radann/error.hpp"

namespace radann {

RleMask rle_encode(const BinaryMask& mask) {
  RleMask rle;
  rle.rows = static_cast<int>(mask.rows());
  rle.cols = static_cast<int>(mask.cols());
  const auto n = mask.size();
  const std::uint8_t* data = mask.data();
  std::uint8_t current = 0;
  std::uint32_t run = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::uint8_t v = data[i] ? 1 : 0;
    if (v != current) {
      rle.counts.push_back(run);
      run = 0;
      current = v;
    }
    ++run;
  }
  rle.counts.push_back(run);
  return rle;
}

BinaryMask rle_decode(const RleMask& rle) {
  if (rle.rows < 0 || rle.cols < 0) throw Error(ErrorCode::kParseError, "negative RLE size");
  BinaryMask mask = BinaryMask::Zero(rle.rows, rle.cols);
  const auto n = static_cast<std::uint64_t>(rle.rows) * rle.cols;
  std::uint64_t pos = 0;
  std::uint8_t value = 0;
  for (auto run : rle.counts) {
    if (pos + run > n) throw Error(ErrorCode::kParseError, "RLE runs exceed the mask size");
    if (value) std::fill(mask.data() + pos, mask.data() + pos + run, std::uint8_t{1});
    pos += run;
    value ^= 1;
  }
  if (pos != n) throw Error(ErrorCode::kParseError, "RLE runs do not cover the mask");
  return mask;
}

}  // namespace radann
