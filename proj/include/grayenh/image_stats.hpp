#pragma once

#include <cstddef>
#include <vector>

#include "grayenh/basis.hpp"
#include "grayenh/gray_image.hpp"

namespace grayenh {

inline constexpr std::size_t kDefaultQuadratureSamples = 4096;

/// Lambda-weighted statistics of an image, one entry per basis index 0..k.
struct ImageStats {
  std::vector<double> means;        // lambda-means, gray levels
  std::vector<double> bins;         // lambda-histogram, sums to 1
  std::vector<double> accumulated;  // trapezoidal running sum of bins
  double min_level = 0.0;
  double max_level = 0.0;

  std::size_t size() const noexcept { return means.size(); }
};

/// Running sum H_0 = h_0/2, H_i = H_{i-1} + (h_i + h_{i-1})/2.
std::vector<double> accumulate_bins(const std::vector<double>& bins);

/// Pixel-sum statistics of `image`:
///   means[i] = sum_p F_i(l_p) l_p / sum_p F_i(l_p)
///   bins[i]  = sum_p F_i(l_p) / area
///
/// Pixels are reduced in fixed blocks of consecutive row-major pixels and the
/// block partials are combined in block order, so the result is bit-identical
/// for every `threads` value.
///
/// Throws EmptyImage, GrayScaleMismatch, InvalidParameter, or DegenerateWeight
/// when some basis function carries (numerically) no weight on the image.
ImageStats compute_stats(const GrayImage& image, const LambdaParams& params,
                         unsigned threads = 1);

/// Statistics of the uniform density 1/M on [0, M], by the midpoint rule
/// with `samples` nodes t_j = (j + 1/2) M / samples. Requires samples >= 256.
ImageStats uniform_reference(const LambdaParams& params,
                             std::size_t samples = kDefaultQuadratureSamples);

}  // namespace grayenh
