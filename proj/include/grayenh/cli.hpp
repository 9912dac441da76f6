#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "grayenh/enhancer.hpp"
#include "grayenh/image_stats.hpp"

namespace grayenh::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitUsage = 2,
  kExitNotConverged = 3,
};

struct RunReport {
  std::string input_path;
  EnhancementConfig config;
  std::vector<std::pair<int, double>> trace;  // (m, d_m)
  std::size_t stage_count = 0;
  bool converged = false;
  std::vector<double> input_means;
  std::vector<double> output_means;
  double wall_clock_ms = 0.0;
};

RunReport make_report(const std::string& input_path, const EnhancementConfig& config,
                      const EnhancementResult& result, double wall_clock_ms);

/// Key/value lines followed by a `trace:` table with `m,distance` rows.
std::string format_report(const RunReport& report);

/// Header `i,b_lambda,h_lambda,H_lambda`, one row per basis index.
std::string format_stats_csv(const ImageStats& stats);

/// Header `t,psi(t)`, one row per LUT sample.
std::string format_lut_csv(const std::vector<std::pair<double, double>>& lut);

/// Fixed notation with six decimals; negative zero prints as zero.
std::string fixed6(double value);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace grayenh::cli
