#include "grayenh/image_stats.hpp"

#include <algorithm>
#include <string>
#include <thread>

#include "grayenh/error.hpp"

namespace grayenh {

namespace {

constexpr std::size_t kBlockSize = 4096;
constexpr double kMinTotalWeight = 1e-300;

// Weighted sums for a run of gray levels: weight[i] = sum F_i, moment[i] = sum F_i * t.
struct Partial {
  std::vector<double> weight;
  std::vector<double> moment;

  explicit Partial(std::size_t n) : weight(n, 0.0), moment(n, 0.0) {}

  void add(const Partial& other) {
    for (std::size_t i = 0; i < weight.size(); ++i) {
      weight[i] += other.weight[i];
      moment[i] += other.moment[i];
    }
  }
};

template <typename LevelAt>
Partial reduce_range(const LambdaParams& params, std::size_t begin, std::size_t end,
                     LevelAt level_at) {
  const std::size_t n = params.row_size();
  Partial part(n);
  std::vector<double> row(n);
  for (std::size_t p = begin; p < end; ++p) {
    const double t = level_at(p);
    lambda_row_into(params, t, row);
    for (std::size_t i = 0; i < n; ++i) {
      part.weight[i] += row[i];
      part.moment[i] += row[i] * t;
    }
  }
  return part;
}

// Fixed-shape reduction: one partial per block, summed in block order.
template <typename LevelAt>
Partial reduce_blocks(const LambdaParams& params, std::size_t count, unsigned threads,
                      LevelAt level_at) {
  const std::size_t blocks = (count + kBlockSize - 1) / kBlockSize;
  std::vector<Partial> partials(blocks, Partial(params.row_size()));
  auto run_block = [&](std::size_t b) {
    const std::size_t begin = b * kBlockSize;
    partials[b] = reduce_range(params, begin, std::min(count, begin + kBlockSize), level_at);
  };

  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), blocks));
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t b = w; b < blocks; b += workers) run_block(b);
      });
    }
  }

  Partial total(params.row_size());
  for (const auto& part : partials) total.add(part);
  return total;
}

ImageStats finish(const Partial& total, double normalizer, double min_level,
                  double max_level) {
  ImageStats stats;
  const std::size_t n = total.weight.size();
  stats.means.resize(n);
  stats.bins.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(total.weight[i] >= kMinTotalWeight)) {
      throw Error(ErrorCode::DegenerateWeight,
                  "basis function " + std::to_string(i) +
                      " has no weight on the image; its mean is undefined",
                  i);
    }
    stats.means[i] = total.moment[i] / total.weight[i];
    stats.bins[i] = total.weight[i] / normalizer;
  }
  stats.accumulated = accumulate_bins(stats.bins);
  stats.min_level = min_level;
  stats.max_level = max_level;
  return stats;
}

}  // namespace

std::vector<double> accumulate_bins(const std::vector<double>& bins) {
  std::vector<double> acc(bins.size());
  if (bins.empty()) return acc;
  acc[0] = 0.5 * bins[0];
  for (std::size_t i = 1; i < bins.size(); ++i) {
    acc[i] = acc[i - 1] + 0.5 * (bins[i] + bins[i - 1]);
  }
  return acc;
}

ImageStats compute_stats(const GrayImage& image, const LambdaParams& params,
                         unsigned threads) {
  params.validate();
  if (image.empty()) {
    throw Error(ErrorCode::EmptyImage, "cannot compute statistics of an empty image");
  }
  if (image.gray_max() != params.gray_max) {
    throw Error(ErrorCode::GrayScaleMismatch,
                "image gray_max " + std::to_string(image.gray_max()) +
                    " != params gray_max " + std::to_string(params.gray_max));
  }
  const auto pixels = image.pixels();
  const Partial total = reduce_blocks(params, pixels.size(), threads,
                                      [&](std::size_t p) { return pixels[p]; });
  return finish(total, static_cast<double>(pixels.size()), image.min_level(),
                image.max_level());
}

ImageStats uniform_reference(const LambdaParams& params, std::size_t samples) {
  params.validate();
  if (samples < 256) {
    throw Error(ErrorCode::InvalidParameter,
                "quadrature needs at least 256 samples, got " + std::to_string(samples));
  }
  const double step = params.gray_max / static_cast<double>(samples);
  const Partial total = reduce_blocks(params, samples, 1, [&](std::size_t j) {
    return (static_cast<double>(j) + 0.5) * step;
  });
  return finish(total, static_cast<double>(samples), 0.0, params.gray_max);
}

}  // namespace grayenh
