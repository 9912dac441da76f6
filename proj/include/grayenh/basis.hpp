#pragma once

#include <span>
#include <vector>

#include "grayenh/gray_image.hpp"

namespace grayenh {

inline constexpr double kMaxLambda = 1e3;

/// Basis order k, sharpening exponent lambda and gray-scale maximum M.
/// The enhancement transform built from these has k + 3 nodes.
struct LambdaParams {
  int k = 4;
  double lambda = 2.0;
  double gray_max = kDefaultGrayMax;

  /// Throws Error(InvalidParameter) unless k >= 1, 1 <= lambda <= 1e3 and
  /// gray_max > 0.
  void validate() const;

  std::size_t row_size() const noexcept { return static_cast<std::size_t>(k) + 1; }
};

/// Bernstein polynomial C(k,i) (t/M)^i (1 - t/M)^(k-i), with 0^0 = 1.
double bernstein(int i, const LambdaParams& params, double t);

/// Normalized sharpened weights F_i(t) = B_i(t)^lambda / sum_j B_j(t)^lambda.
///
/// Evaluated as exp(lambda * log B_i - max_j lambda * log B_j) followed by
/// normalization, so the row never underflows to all zeros. The row sums to
/// one and its largest entry is at least 1/(k+1).
std::vector<double> lambda_row(const LambdaParams& params, double t);

/// Allocation-free variant of lambda_row; `out` must hold k + 1 entries.
/// Does not validate params (callers in hot loops validate once).
void lambda_row_into(const LambdaParams& params, double t, std::span<double> out);

}  // namespace grayenh
