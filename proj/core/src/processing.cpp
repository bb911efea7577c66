#include "radann/processing.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

namespace radann {

std::vector<double> hann_window(int n) {
  std::vector<double> w(n, 1.0);
  if (n <= 1) return w;
  for (int i = 0; i < n; ++i) {
    w[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * i / (n - 1)));
  }
  return w;
}

RadarFrame process_cube(RadarFrame frame, const RadarConfig& config) {
  config.validate();
  const DataCube& cube = frame.raw_cube;
  const int num_rx = config.num_rx_virtual;
  const int num_chirps = config.chirps_per_frame;
  const int num_samples = config.samples_per_chirp;
  const int num_angles = config.num_angle_bins;
  if (cube.num_rx != num_rx || cube.num_chirps != num_chirps || cube.num_samples != num_samples ||
      cube.samples.size() != static_cast<std::size_t>(num_rx) * num_chirps * num_samples) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cube dims [" + std::to_string(cube.num_rx) + " x " + std::to_string(cube.num_chirps) +
                    " x " + std::to_string(cube.num_samples) + "] do not match config");
  }

  using cd = std::complex<double>;
  const std::vector<double> range_win =
      config.hann_range ? hann_window(num_samples) : std::vector<double>(num_samples, 1.0);
  const std::vector<double> doppler_win =
      config.hann_doppler ? hann_window(num_chirps) : std::vector<double>(num_chirps, 1.0);

  Eigen::FFT<double> fft;

  // Range spectra, stored [range][rx][chirp].
  std::vector<cd> range_spec(static_cast<std::size_t>(num_samples) * num_rx * num_chirps);
  auto rs = [&](int r, int k, int m) -> cd& {
    return range_spec[(static_cast<std::size_t>(r) * num_rx + k) * num_chirps + m];
  };
  {
    std::vector<cd> in(num_samples), out(num_samples);
    for (int k = 0; k < num_rx; ++k) {
      for (int m = 0; m < num_chirps; ++m) {
        for (int n = 0; n < num_samples; ++n) {
          in[n] = cd(cube.at(k, m, n)) * range_win[n];
        }
        fft.fwd(out, in);
        for (int r = 0; r < num_samples; ++r) rs(r, k, m) = out[r];
      }
    }
  }

  frame.rd_map = MagnitudeMap::Zero(num_samples, num_chirps);
  {
    std::vector<cd> in(num_chirps), out(num_chirps);
    const int shift = num_chirps / 2;
    std::vector<double> row(num_chirps);
    for (int r = 0; r < num_samples; ++r) {
      std::fill(row.begin(), row.end(), 0.0);
      for (int k = 0; k < num_rx; ++k) {
        for (int m = 0; m < num_chirps; ++m) in[m] = rs(r, k, m) * doppler_win[m];
        fft.fwd(out, in);
        for (int d = 0; d < num_chirps; ++d) row[(d + shift) % num_chirps] += std::sqrt(std::norm(out[d]));
      }
      for (int d = 0; d < num_chirps; ++d) frame.rd_map(r, d) = static_cast<float>(row[d] / num_rx);
    }
  }

  // Zero-padded angle DFT as a steering-matrix product; rows already FFT-shifted.
  Eigen::MatrixXcd steering(num_angles, num_rx);
  for (int b = 0; b < num_angles; ++b) {
    const int unshifted = (b + num_angles / 2) % num_angles;
    for (int k = 0; k < num_rx; ++k) {
      const double phase = -2.0 * std::numbers::pi * unshifted * k / num_angles;
      steering(b, k) = std::polar(1.0, phase);
    }
  }
  frame.ra_map = MagnitudeMap::Zero(num_samples, num_angles);
  {
    Eigen::MatrixXcd snapshots(num_rx, num_chirps);
    Eigen::MatrixXcd spectrum(num_angles, num_chirps);
    for (int r = 0; r < num_samples; ++r) {
      for (int k = 0; k < num_rx; ++k) {
        for (int m = 0; m < num_chirps; ++m) snapshots(k, m) = rs(r, k, m);
      }
      spectrum.noalias() = steering * snapshots;
      const Eigen::VectorXd mean_mag = spectrum.cwiseAbs2().cwiseSqrt().rowwise().mean();
      frame.ra_map.row(r) = mean_mag.transpose().cast<float>();
    }
  }
  return frame;
}

}  // namespace radann
