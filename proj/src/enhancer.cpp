#include "grayenh/enhancer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "grayenh/error.hpp"

namespace grayenh {

void EnhancementConfig::validate() const {
  params.validate();
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::InvalidParameter, "epsilon must be positive");
  }
  if (max_iterations < 1) {
    throw Error(ErrorCode::InvalidParameter, "max_iterations must be >= 1");
  }
  if (quadrature_samples < 256) {
    throw Error(ErrorCode::InvalidParameter, "quadrature_samples must be >= 256");
  }
}

StepParameters step_parameters(const ImageStats& stats_l, const ImageStats& stats_u,
                               double gray_max) {
  const std::size_t n = stats_u.size();
  if (n == 0 || stats_l.size() != n || stats_l.accumulated.size() != n ||
      stats_u.accumulated.size() != n) {
    throw Error(ErrorCode::LengthMismatch, "image and reference statistics differ in size");
  }
  StepParameters step;
  step.alphas.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (stats_u.accumulated[i] == 0.0) {
      throw Error(ErrorCode::DivisionByZero,
                  "reference accumulated bin " + std::to_string(i) + " is zero", i);
    }
    step.alphas[i] = stats_l.accumulated[i] / stats_u.accumulated[i];
  }

  const auto& b = stats_u.means;
  double scale = step.alphas[0] * b[0];
  for (std::size_t i = 1; i < n; ++i) {
    scale += step.alphas[i] * (b[i] - b[i - 1]);
  }
  scale += gray_max - b[n - 1];
  step.beta = scale / gray_max;
  return step;
}

std::vector<double> node_values(const StepParameters& step, const ImageStats& stats_u,
                                double gray_max) {
  if (!(step.beta > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "beta must be positive");
  }
  const std::size_t n = stats_u.size();
  if (step.alphas.size() != n) {
    throw Error(ErrorCode::LengthMismatch, "alphas and reference means differ in size");
  }
  const auto& b = stats_u.means;
  std::vector<double> f;
  f.reserve(n + 2);
  f.push_back(0.0);
  f.push_back(step.alphas[0] / step.beta * b[0]);
  for (std::size_t i = 1; i < n; ++i) {
    f.push_back(f.back() + step.alphas[i] / step.beta * (b[i] - b[i - 1]));
  }
  f.push_back(f.back() + (gray_max - b[n - 1]) / step.beta);
  return f;
}

std::vector<double> repair_breakpoints(double min_level, std::span<const double> means,
                                       double max_level) {
  if (!(max_level > min_level)) {
    throw Error(ErrorCode::ConstantImage,
                "image is constant (gray level " + std::to_string(min_level) + ")");
  }
  const std::size_t n = means.size() + 2;
  const double delta = kMinBreakpointSpacing;
  if (max_level - min_level < static_cast<double>(n - 1) * delta) {
    throw Error(ErrorCode::InsufficientRange,
                "gray range [" + std::to_string(min_level) + ", " + std::to_string(max_level) +
                    "] cannot host " + std::to_string(n) + " breakpoints");
  }

  std::vector<double> v(n);
  v.front() = min_level;
  v.back() = max_level;
  for (std::size_t i = 0; i < means.size(); ++i) {
    v[i + 1] = std::clamp(means[i], min_level + delta, max_level - delta);
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    v[i] = std::max(v[i], v[i - 1] + delta);
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    v[i] = std::min(v[i], v[i + 1] - delta);
  }
  return v;
}

PiecewiseLinearTransform build_step_transform(const GrayImage& image,
                                              const ImageStats& stats_l,
                                              const ImageStats& stats_u,
                                              const LambdaParams& params) {
  params.validate();
  if (stats_l.size() != params.row_size() || stats_u.size() != params.row_size()) {
    throw Error(ErrorCode::LengthMismatch, "statistics do not match basis order k");
  }
  if (image.gray_max() != params.gray_max) {
    throw Error(ErrorCode::GrayScaleMismatch, "image and params gray_max differ");
  }
  auto breakpoints =
      repair_breakpoints(image.min_level(), stats_l.means, image.max_level());
  auto values = node_values(step_parameters(stats_l, stats_u, params.gray_max), stats_u,
                            params.gray_max);
  return PiecewiseLinearTransform(std::move(breakpoints), std::move(values), params.gray_max);
}

double mean_distance(const ImageStats& a, const ImageStats& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::LengthMismatch, "statistics differ in size");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a.means[i] - b.means[i]));
  }
  return d;
}

EnhancementResult enhance(const GrayImage& image, const EnhancementConfig& config) {
  config.validate();
  const LambdaParams& params = config.params;
  if (image.empty()) {
    throw Error(ErrorCode::EmptyImage, "cannot enhance an empty image");
  }
  if (image.min_level() == image.max_level()) {
    throw Error(ErrorCode::ConstantImage,
                "image is constant (gray level " + std::to_string(image.min_level()) + ")");
  }

  EnhancementResult result;
  result.reference_stats = uniform_reference(params, config.quadrature_samples);
  result.initial_stats = compute_stats(image, params, config.threads);

  GrayImage current = image;
  ImageStats stats = result.initial_stats;
  double distance = mean_distance(stats, result.reference_stats);
  result.trace.push_back({0, distance, {}, {}});

  int m = 0;
  while (!(distance < config.epsilon) && m < config.max_iterations) {
    try {
      auto stage = build_step_transform(current, stats, result.reference_stats, params);
      auto& entry = result.trace.back();
      entry.breakpoints.assign(stage.breakpoints().begin(), stage.breakpoints().end());
      entry.node_values.assign(stage.node_values().begin(), stage.node_values().end());
      current = apply_to_image(stage, current);
      result.stages.push_back(std::move(stage));
      stats = compute_stats(current, params, config.threads);
    } catch (const Error& e) {
      throw Error(e.code(), "iteration " + std::to_string(m) + ": " + e.detail(),
                  static_cast<std::size_t>(m));
    }
    ++m;
    distance = mean_distance(stats, result.reference_stats);
    result.trace.push_back({m, distance, {}, {}});
  }

  result.converged = distance < config.epsilon;
  result.enhanced = std::move(current);
  result.final_stats = std::move(stats);
  return result;
}

double evaluate_chain(std::span<const PiecewiseLinearTransform> stages, double v) {
  for (const auto& stage : stages) v = stage.evaluate(v);
  return v;
}

std::vector<std::pair<double, double>> export_lut(std::span<const PiecewiseLinearTransform> stages,
                                                  double gray_max, std::size_t levels) {
  if (levels < 2) {
    throw Error(ErrorCode::InvalidParameter, "a lookup table needs at least 2 levels");
  }
  std::vector<std::pair<double, double>> lut;
  lut.reserve(levels);
  for (std::size_t j = 0; j < levels; ++j) {
    const double t = static_cast<double>(j) * gray_max / static_cast<double>(levels - 1);
    lut.emplace_back(t, evaluate_chain(stages, t));
  }
  return lut;
}

std::vector<std::pair<double, double>> export_lut(const EnhancementResult& result,
                                                  std::size_t levels) {
  return export_lut(result.stages, result.enhanced.gray_max(), levels);
}

}  // namespace grayenh
