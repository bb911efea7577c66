#pragma once

#include <cstdint>
#include <initializer_list>

namespace radann {

/// splitmix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stable seed for a sub-stream: folds each key into the root in order.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> keys) {
  std::uint64_t s = mix64(root);
  for (auto k : keys) s = mix64(s ^ mix64(k + 0x632be59bd9b4e019ULL));
  return s;
}

/// Pipeline stage tags used when splitting the root seed.
enum class Stage : std::uint64_t {
  kSynthesis = 1,
  kClustering = 2,
  kTracking = 3,
};

constexpr std::uint64_t stage_seed(std::uint64_t root, Stage stage, std::int64_t frame,
                                   std::int64_t instance) {
  return derive_seed(root, {static_cast<std::uint64_t>(stage), static_cast<std::uint64_t>(frame),
                            static_cast<std::uint64_t>(instance)});
}

}  // namespace radann
