#pragma once

#include <span>
#include <vector>

#include "grayenh/gray_image.hpp"

namespace grayenh {

/// Minimum spacing between consecutive breakpoints, in gray levels.
inline constexpr double kMinBreakpointSpacing = 0.5;

/// Coefficients a_i of f(v) = sum_i a_i |v - v_i| interpolating (v_i, f_i).
///
/// Closed form: the endpoint coefficients carry half of the wrap-around slope
/// (f_n + f_1) / (v_n - v_1), every coefficient carries half of the slope
/// change at its breakpoint. Throws LengthMismatch, InvalidParameter (n < 2)
/// or NonIncreasingBreakpoints with the index of the offending breakpoint.
std::vector<double> solve_coefficients(std::span<const double> breakpoints,
                                       std::span<const double> node_values);

/// Gray-level transform in the absolute-value basis, f: [0, M] -> [0, M].
class PiecewiseLinearTransform {
 public:
  /// Builds the transform interpolating node_values at breakpoints.
  /// Breakpoints and node values must lie in [0, gray_max]; values within
  /// 1e-9*gray_max outside the range are snapped onto it.
  PiecewiseLinearTransform(std::vector<double> breakpoints,
                           std::vector<double> node_values,
                           double gray_max = kDefaultGrayMax);

  /// f(v) = v on [0, gray_max].
  static PiecewiseLinearTransform identity(double gray_max = kDefaultGrayMax);

  /// clamp(sum_i a_i |v - v_i|, 0, M). Throws DomainViolation when v is
  /// outside [0, M] by more than 1e-9*M.
  double evaluate(double v) const;
  double operator()(double v) const { return evaluate(v); }

  /// Raw value of the absolute-value sum, without domain checks or clamping.
  double evaluate_unclamped(double v) const noexcept;

  std::size_t size() const noexcept { return breakpoints_.size(); }
  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  std::span<const double> node_values() const noexcept { return node_values_; }
  std::span<const double> coefficients() const noexcept { return coefficients_; }
  double gray_max() const noexcept { return gray_max_; }

 private:
  std::vector<double> breakpoints_;
  std::vector<double> node_values_;
  std::vector<double> coefficients_;
  double gray_max_;
};

/// Per-pixel evaluation; output keeps real values and dimensions.
/// Throws GrayScaleMismatch when the gray scales differ.
GrayImage apply_to_image(const PiecewiseLinearTransform& transform, const GrayImage& image);

}  // namespace grayenh
