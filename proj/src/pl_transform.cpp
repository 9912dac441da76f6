#include "grayenh/pl_transform.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "grayenh/error.hpp"

namespace grayenh {

namespace {

constexpr double kRelativeSlack = 1e-9;

void check_breakpoints(std::span<const double> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw Error(ErrorCode::NonIncreasingBreakpoints,
                  "breakpoint " + std::to_string(i) + " is not finite", i);
    }
  }
  for (std::size_t i = 1; i < v.size(); ++i) {
    // The relative fudge lets spacings produced as fl(v - delta) pass.
    if (v[i] - v[i - 1] < kMinBreakpointSpacing * (1.0 - 1e-9)) {
      throw Error(ErrorCode::NonIncreasingBreakpoints,
                  "breakpoint " + std::to_string(i) + " (" + std::to_string(v[i]) +
                      ") is closer than " + std::to_string(kMinBreakpointSpacing) +
                      " to its predecessor (" + std::to_string(v[i - 1]) + ")",
                  i);
    }
  }
}

void snap_into_range(std::vector<double>& values, double gray_max, const char* what) {
  const double slack = kRelativeSlack * gray_max;
  for (std::size_t i = 0; i < values.size(); ++i) {
    double& x = values[i];
    if (!std::isfinite(x) || x < -slack || x > gray_max + slack) {
      throw Error(ErrorCode::DomainViolation,
                  std::string(what) + " " + std::to_string(i) + " = " + std::to_string(x) +
                      " outside [0, " + std::to_string(gray_max) + "]",
                  i);
    }
    x = std::clamp(x, 0.0, gray_max);
  }
}

}  // namespace

std::vector<double> solve_coefficients(std::span<const double> breakpoints,
                                       std::span<const double> node_values) {
  if (breakpoints.size() != node_values.size()) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(breakpoints.size()) + " breakpoints vs " +
                    std::to_string(node_values.size()) + " node values");
  }
  const std::size_t n = breakpoints.size();
  if (n < 2) {
    throw Error(ErrorCode::InvalidParameter, "at least two nodes are required");
  }
  check_breakpoints(breakpoints);

  const auto& v = breakpoints;
  const auto& f = node_values;
  auto slope = [&](std::size_t i) { return (f[i + 1] - f[i]) / (v[i + 1] - v[i]); };
  const double wrap = (f[n - 1] + f[0]) / (v[n - 1] - v[0]);

  std::vector<double> a(n);
  a[0] = 0.5 * (wrap + slope(0));
  for (std::size_t i = 1; i + 1 < n; ++i) {
    a[i] = 0.5 * (slope(i) - slope(i - 1));
  }
  a[n - 1] = 0.5 * (wrap - slope(n - 2));
  return a;
}

PiecewiseLinearTransform::PiecewiseLinearTransform(std::vector<double> breakpoints,
                                                   std::vector<double> node_values,
                                                   double gray_max)
    : breakpoints_(std::move(breakpoints)),
      node_values_(std::move(node_values)),
      gray_max_(gray_max) {
  if (!(gray_max_ > 0.0) || !std::isfinite(gray_max_)) {
    throw Error(ErrorCode::InvalidParameter, "gray_max must be a positive finite value");
  }
  if (breakpoints_.size() != node_values_.size()) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(breakpoints_.size()) + " breakpoints vs " +
                    std::to_string(node_values_.size()) + " node values");
  }
  snap_into_range(breakpoints_, gray_max_, "breakpoint");
  snap_into_range(node_values_, gray_max_, "node value");
  coefficients_ = solve_coefficients(breakpoints_, node_values_);
}

PiecewiseLinearTransform PiecewiseLinearTransform::identity(double gray_max) {
  return PiecewiseLinearTransform({0.0, gray_max}, {0.0, gray_max}, gray_max);
}

double PiecewiseLinearTransform::evaluate_unclamped(double v) const noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    sum += coefficients_[i] * std::abs(v - breakpoints_[i]);
  }
  return sum;
}

double PiecewiseLinearTransform::evaluate(double v) const {
  const double slack = kRelativeSlack * gray_max_;
  if (!(v >= -slack && v <= gray_max_ + slack)) {
    throw Error(ErrorCode::DomainViolation,
                "gray level " + std::to_string(v) + " outside [0, " +
                    std::to_string(gray_max_) + "]");
  }
  // + 0.0 turns a clamped -0.0 into +0.0.
  return std::clamp(evaluate_unclamped(v), 0.0, gray_max_) + 0.0;
}

GrayImage apply_to_image(const PiecewiseLinearTransform& transform, const GrayImage& image) {
  if (transform.gray_max() != image.gray_max()) {
    throw Error(ErrorCode::GrayScaleMismatch,
                "transform gray_max " + std::to_string(transform.gray_max()) +
                    " != image gray_max " + std::to_string(image.gray_max()));
  }
  const auto src = image.pixels();
  std::vector<double> out(src.size());
  std::transform(src.begin(), src.end(), out.begin(),
                 [&](double p) { return transform.evaluate(p); });
  return GrayImage(image.width(), image.height(), std::move(out), image.gray_max());
}

}  // namespace grayenh
