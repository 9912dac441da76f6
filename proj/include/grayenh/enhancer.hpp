#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "grayenh/basis.hpp"
#include "grayenh/gray_image.hpp"
#include "grayenh/image_stats.hpp"
#include "grayenh/pl_transform.hpp"

namespace grayenh {

/// Tag identifying how the normalizer beta is computed. The scale includes the
/// last segment (M - b_k(u)) so that the node values span exactly [0, M].
inline constexpr std::string_view kBetaFormulaTag = "final-segment-corrected";

struct EnhancementConfig {
  LambdaParams params;
  double epsilon = 0.5;  // gray levels
  int max_iterations = 50;
  std::size_t quadrature_samples = kDefaultQuadratureSamples;
  unsigned threads = 1;  // statistics only; results do not depend on it

  void validate() const;
};

struct StepParameters {
  std::vector<double> alphas;  // H_i(l) / H_i(u)
  double beta = 1.0;
};

/// One record per image state l^(m). `breakpoints`/`node_values` describe the
/// stage built from that state and are empty for the final state.
struct TraceEntry {
  int iteration = 0;
  double distance = 0.0;  // max_i |b_i(l^(m)) - b_i(u)|
  std::vector<double> breakpoints;
  std::vector<double> node_values;
};

struct EnhancementResult {
  GrayImage enhanced;
  std::vector<PiecewiseLinearTransform> stages;  // application order
  std::vector<TraceEntry> trace;
  bool converged = false;
  ImageStats initial_stats;
  ImageStats final_stats;
  ImageStats reference_stats;
};

/// Ratios of accumulated histograms and the normalizer beta. Throws
/// LengthMismatch or DivisionByZero (a reference accumulated bin is zero).
StepParameters step_parameters(const ImageStats& stats_l, const ImageStats& stats_u,
                               double gray_max);

/// Node values f_1..f_{k+3}: 0, then increments alpha_i (b_i(u) - b_{i-1}(u)) / beta,
/// then the last segment (M - b_k(u)) / beta. Ends at M.
std::vector<double> node_values(const StepParameters& step, const ImageStats& stats_u,
                                double gray_max);

/// Breakpoints [min, b_0(l), ..., b_k(l), max] pushed apart to the minimum
/// spacing. Throws ConstantImage or InsufficientRange.
std::vector<double> repair_breakpoints(double min_level, std::span<const double> means,
                                       double max_level);

/// The transform for one enhancement iteration.
PiecewiseLinearTransform build_step_transform(const GrayImage& image,
                                              const ImageStats& stats_l,
                                              const ImageStats& stats_u,
                                              const LambdaParams& params);

/// max_i |a.means[i] - b.means[i]|.
double mean_distance(const ImageStats& a, const ImageStats& b);

/// Iterates l^(m+1) = f^(m)(l^(m)) until the lambda-means of the image are
/// within epsilon of the uniform reference (max norm) or max_iterations
/// stages have been applied. Errors raised while building a stage carry the
/// iteration index.
EnhancementResult enhance(const GrayImage& image, const EnhancementConfig& config);

/// Applies the stages left to right, clamping after each.
double evaluate_chain(std::span<const PiecewiseLinearTransform> stages, double v);

/// Samples the composed transform at t_j = j M / (levels - 1).
std::vector<std::pair<double, double>> export_lut(std::span<const PiecewiseLinearTransform> stages,
                                                  double gray_max, std::size_t levels);
std::vector<std::pair<double, double>> export_lut(const EnhancementResult& result,
                                                  std::size_t levels);

}  // namespace grayenh
