#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace radann {

/// Row-major real map (range rows x Doppler or angle columns).
using MagnitudeMap = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
/// Row-major 0/1 raster.
using BinaryMask = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
/// Row-major class-label raster, values in [0, kNumClasses).
using LabelMap = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Point3 = Eigen::Vector3d;

/// Object categories. Integer values double as segmentation labels; 0 is background.
enum class Category : std::uint8_t {
  kPedestrian = 1,
  kCyclist = 2,
  kCar = 3,
};

inline constexpr int kNumClasses = 4;

std::string_view to_string(Category category);
Category category_from_string(std::string_view name);

/// A (row, column) cell on a radar map.
struct Bin {
  int row = 0;
  int col = 0;

  friend bool operator==(const Bin&, const Bin&) = default;
  friend auto operator<=>(const Bin&, const Bin&) = default;
};

/// Raw IF samples indexed [rx][chirp][sample].
struct DataCube {
  int num_rx = 0;
  int num_chirps = 0;
  int num_samples = 0;
  std::vector<std::complex<float>> samples;

  DataCube() = default;
  DataCube(int rx, int chirps, int samples_per_chirp)
      : num_rx(rx),
        num_chirps(chirps),
        num_samples(samples_per_chirp),
        samples(static_cast<std::size_t>(rx) * chirps * samples_per_chirp) {}

  std::size_t index(int rx, int chirp, int sample) const {
    return (static_cast<std::size_t>(rx) * num_chirps + chirp) * num_samples + sample;
  }
  std::complex<float>& at(int rx, int chirp, int sample) { return samples[index(rx, chirp, sample)]; }
  const std::complex<float>& at(int rx, int chirp, int sample) const {
    return samples[index(rx, chirp, sample)];
  }
  bool empty() const { return samples.empty(); }
};

}  // namespace radann
