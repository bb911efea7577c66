#include <random>

#include <gtest/gtest.h>

#include "radann/error.hpp"
#include "radann/rle.hpp"

namespace radann {
namespace {

TEST(Rle, KnownEncoding) {
  BinaryMask m = BinaryMask::Zero(2, 3);
  m(0, 1) = 1;
  m(0, 2) = 1;
  m(1, 0) = 1;
  const RleMask r = rle_encode(m);
  EXPECT_EQ(r.rows, 2);
  EXPECT_EQ(r.cols, 3);
  EXPECT_EQ(r.counts, (std::vector<std::uint32_t>{1, 3, 2}));
}

TEST(Rle, LeadingOnesStartWithEmptyZeroRun) {
  const BinaryMask m = BinaryMask::Ones(2, 2);
  EXPECT_EQ(rle_encode(m).counts, (std::vector<std::uint32_t>{0, 4}));
  EXPECT_EQ(rle_encode(BinaryMask::Zero(3, 3)).counts, (std::vector<std::uint32_t>{9}));
}

TEST(Rle, RandomRoundTrip) {
  std::mt19937_64 rng(1);
  std::bernoulli_distribution on(0.3);
  for (int t = 0; t < 50; ++t) {
    BinaryMask m(7 + t % 5, 11 + t % 3);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = on(rng);
    EXPECT_EQ(rle_decode(rle_encode(m)), m);
  }
}

TEST(Rle, BadCountsRejected) {
  RleMask r{2, 2, {1, 2}};
  try {
    rle_decode(r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
  }
  r.counts = {3, 3};
  EXPECT_THROW(rle_decode(r), Error);
}

}  // namespace
}  // namespace radann
