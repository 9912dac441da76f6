#include "grayenh/gray_image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "grayenh/error.hpp"

namespace grayenh {

GrayImage::GrayImage(std::size_t width, std::size_t height,
                     std::vector<double> pixels, double gray_max)
    : width_(width), height_(height), pixels_(std::move(pixels)), gray_max_(gray_max) {
  if (!(gray_max_ > 0.0) || !std::isfinite(gray_max_)) {
    throw Error(ErrorCode::InvalidParameter, "gray_max must be a positive finite value");
  }
  if (width_ == 0 || height_ == 0) {
    throw Error(ErrorCode::EmptyImage, "image dimensions must be positive");
  }
  if (pixels_.size() != width_ * height_) {
    throw Error(ErrorCode::LengthMismatch,
                "expected " + std::to_string(width_ * height_) + " pixels, got " +
                    std::to_string(pixels_.size()));
  }
  for (std::size_t p = 0; p < pixels_.size(); ++p) {
    const double v = pixels_[p];
    if (!std::isfinite(v) || v < 0.0 || v > gray_max_) {
      throw Error(ErrorCode::DomainViolation,
                  "pixel " + std::to_string(p) + " = " + std::to_string(v) +
                      " outside [0, " + std::to_string(gray_max_) + "]",
                  p);
    }
  }
}

double GrayImage::min_level() const {
  if (pixels_.empty()) throw Error(ErrorCode::EmptyImage, "min of empty image");
  return *std::min_element(pixels_.begin(), pixels_.end());
}

double GrayImage::max_level() const {
  if (pixels_.empty()) throw Error(ErrorCode::EmptyImage, "max of empty image");
  return *std::max_element(pixels_.begin(), pixels_.end());
}

}  // namespace grayenh
