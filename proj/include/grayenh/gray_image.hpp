#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace grayenh {

inline constexpr double kDefaultGrayMax = 255.0;

/// Real-valued grayscale image on [0, gray_max], row-major.
///
/// Pixels are kept as doubles through the whole pipeline; quantization only
/// happens when an image is written to disk.
class GrayImage {
 public:
  GrayImage() = default;

  /// Throws Error(EmptyImage) for zero dimensions, LengthMismatch when the
  /// pixel count differs from width*height and DomainViolation for pixels
  /// outside [0, gray_max] or non-finite values.
  GrayImage(std::size_t width, std::size_t height, std::vector<double> pixels,
            double gray_max = kDefaultGrayMax);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t area() const noexcept { return pixels_.size(); }
  bool empty() const noexcept { return pixels_.empty(); }
  double gray_max() const noexcept { return gray_max_; }

  std::span<const double> pixels() const noexcept { return pixels_; }
  double at(std::size_t x, std::size_t y) const { return pixels_.at(y * width_ + x); }

  double min_level() const;
  double max_level() const;

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> pixels_;
  double gray_max_ = kDefaultGrayMax;
};

}  // namespace grayenh
