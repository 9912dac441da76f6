#pragma once

// Fixtures and independent oracles shared by the test binaries. Nothing here
// calls into the code paths it is used to check.

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "grayenh/gray_image.hpp"

namespace grayenh::testing {

/// l(x, y) = (x / (w-1))^2 * M for every row.
inline GrayImage dark_ramp(std::size_t width = 256, std::size_t height = 256, double gray_max = 255.0) {
  std::vector<double> px(width * height);
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      const double s = static_cast<double>(x) / static_cast<double>(width - 1);
      px[y * width + x] = s * s * gray_max;
    }
  }
  return GrayImage(width, height, std::move(px), gray_max);
}

/// Every row holds the levels 0, 1, ..., 255: the 8-bit discrete uniform image.
inline GrayImage uniform_levels(std::size_t height = 256) {
  std::vector<double> px(256 * height);
  for (std::size_t y = 0; y < height; ++y)
    for (std::size_t x = 0; x < 256; ++x) px[y * 256 + x] = static_cast<double>(x);
  return GrayImage(256, height, std::move(px), 255.0);
}

inline GrayImage random_image(std::mt19937_64& rng, std::size_t width, std::size_t height,
                              double gray_max = 255.0) {
  // Random sub-range so images are not all full-scale.
  std::uniform_real_distribution<double> bound(0.0, gray_max);
  double lo = bound(rng), hi = bound(rng);
  if (lo > hi) std::swap(lo, hi);
  if (hi - lo < 10.0) {
    lo = 0.0;
    hi = gray_max;
  }
  std::uniform_real_distribution<double> level(lo, hi);
  std::vector<double> px(width * height);
  for (auto& p : px) p = level(rng);
  return GrayImage(width, height, std::move(px), gray_max);
}

/// Dense Gaussian elimination with partial pivoting.
inline std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double m = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= m * a[c][j];
      b[r] -= m * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

/// Coefficients of sum_i a_i |v - v_i| by solving the interpolation system directly.
inline std::vector<double> coefficients_by_linear_solve(const std::vector<double>& v,
                                                        const std::vector<double>& f) {
  std::vector<std::vector<double>> a(v.size(), std::vector<double>(v.size()));
  for (std::size_t r = 0; r < v.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) a[r][c] = std::abs(v[r] - v[c]);
  return solve_dense(a, f);
}

inline double binomial(int n, int k) {
  double c = 1.0;
  for (int j = 1; j <= k; ++j) c = c * (n - k + j) / j;
  return c;
}

/// Plain power-form Bernstein polynomial.
inline double direct_bernstein(int i, int k, double t, double m) {
  const double x = t / m;
  return binomial(k, i) * std::pow(x, i) * std::pow(1.0 - x, k - i);
}

/// Naive powered-and-normalized weights (no log-space shift).
inline std::vector<double> naive_lambda_row(int k, double lambda, double t, double m) {
  std::vector<double> w(k + 1);
  double s = 0.0;
  for (int i = 0; i <= k; ++i) {
    w[i] = std::pow(direct_bernstein(i, k, t, m), lambda);
    s += w[i];
  }
  for (auto& x : w) x /= s;
  return w;
}

struct OracleStats {
  std::vector<double> means, bins, accumulated;
};

/// Bernstein means/histogram of a pixel list, computed with the naive weights.
inline OracleStats naive_stats(const std::vector<double>& pixels, int k, double lambda, double m) {
  std::vector<double> num(k + 1, 0.0), den(k + 1, 0.0);
  for (double t : pixels) {
    const auto w = naive_lambda_row(k, lambda, t, m);
    for (int i = 0; i <= k; ++i) {
      num[i] += w[i] * t;
      den[i] += w[i];
    }
  }
  OracleStats s;
  for (int i = 0; i <= k; ++i) {
    s.means.push_back(num[i] / den[i]);
    s.bins.push_back(den[i] / static_cast<double>(pixels.size()));
  }
  s.accumulated.resize(k + 1);
  s.accumulated[0] = s.bins[0] / 2;
  for (int i = 1; i <= k; ++i)
    s.accumulated[i] = s.accumulated[i - 1] + (s.bins[i] + s.bins[i - 1]) / 2;
  return s;
}

inline GrayImage from_bytes_image(std::size_t w, std::size_t h, const std::vector<std::uint8_t>& b) {
  std::vector<double> px(b.begin(), b.end());
  return GrayImage(w, h, std::move(px), 255.0);
}

}  // namespace grayenh::testing
