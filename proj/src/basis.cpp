#include "grayenh/basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "grayenh/error.hpp"

namespace grayenh {

namespace {

double unit_coordinate(const LambdaParams& params, double t) {
  const double slack = 1e-9 * params.gray_max;
  if (!(t >= -slack && t <= params.gray_max + slack)) {
    throw Error(ErrorCode::DomainViolation,
                "gray level " + std::to_string(t) + " outside [0, " +
                    std::to_string(params.gray_max) + "]");
  }
  return std::clamp(t / params.gray_max, 0.0, 1.0);
}

double binomial(int k, int i) {
  double c = 1.0;
  for (int j = 1; j <= i; ++j) {
    c = c * (k - i + j) / j;
  }
  return c;
}

}  // namespace

void LambdaParams::validate() const {
  if (k < 1) {
    throw Error(ErrorCode::InvalidParameter, "basis order k must be >= 1, got " + std::to_string(k));
  }
  if (!(lambda >= 1.0 && lambda <= kMaxLambda)) {
    throw Error(ErrorCode::InvalidParameter,
                "lambda must lie in [1, 1000], got " + std::to_string(lambda));
  }
  if (!(gray_max > 0.0) || !std::isfinite(gray_max)) {
    throw Error(ErrorCode::InvalidParameter, "gray_max must be positive");
  }
}

double bernstein(int i, const LambdaParams& params, double t) {
  if (params.k < 1) {
    throw Error(ErrorCode::InvalidParameter, "basis order k must be >= 1");
  }
  if (i < 0 || i > params.k) {
    throw Error(ErrorCode::IndexOutOfRange,
                "index " + std::to_string(i) + " outside [0, " + std::to_string(params.k) + "]");
  }
  const double x = unit_coordinate(params, t);
  // std::pow(0, 0) == 1, which is the endpoint convention we need.
  return binomial(params.k, i) * std::pow(x, i) * std::pow(1.0 - x, params.k - i);
}

void lambda_row_into(const LambdaParams& params, double t, std::span<double> out) {
  const int k = params.k;
  const double x = unit_coordinate(params, t);
  const double log_x = std::log(x);
  const double log_1mx = std::log1p(-x);

  double log_binom = 0.0;
  double top = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= k; ++i) {
    if (i > 0) log_binom += std::log(static_cast<double>(k - i + 1) / i);
    double log_b = log_binom;
    if (i > 0) log_b += i * log_x;
    if (i < k) log_b += (k - i) * log_1mx;
    const double scaled = params.lambda * log_b;
    out[i] = scaled;
    top = std::max(top, scaled);
  }

  double sum = 0.0;
  for (int i = 0; i <= k; ++i) {
    out[i] = std::exp(out[i] - top);
    sum += out[i];
  }
  for (int i = 0; i <= k; ++i) {
    out[i] /= sum;
  }
}

std::vector<double> lambda_row(const LambdaParams& params, double t) {
  params.validate();
  std::vector<double> row(params.row_size());
  lambda_row_into(params, t, row);
  return row;
}

}  // namespace grayenh
