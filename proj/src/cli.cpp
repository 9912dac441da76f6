#include "grayenh/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <climits>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "grayenh/error.hpp"
#include "grayenh/pgm.hpp"

namespace grayenh::cli {

namespace {

constexpr std::size_t kLutLevels = 256;

struct EnhanceOptions {
  std::string input;
  std::string output;
  std::string report_path;
  std::string curve_path;
  EnhancementConfig config;
};

void add_model_options(CLI::App& cmd, EnhancementConfig& config) {
  cmd.add_option("--k", config.params.k, "Basis order (transform has k+3 nodes)")
      ->check(CLI::Range(1, INT_MAX))
      ->capture_default_str();
  cmd.add_option("--lambda", config.params.lambda, "Sharpening exponent")
      ->check(CLI::Range(1.0, kMaxLambda))
      ->capture_default_str();
}

void add_enhance_options(CLI::App& cmd, EnhanceOptions& opts) {
  cmd.add_option("input", opts.input, "Input PGM image")->required();
  add_model_options(cmd, opts.config);
  cmd.add_option("--epsilon", opts.config.epsilon, "Convergence tolerance in gray levels")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--max-iters", opts.config.max_iterations, "Maximum number of stages")
      ->check(CLI::Range(1, INT_MAX))
      ->capture_default_str();
  cmd.add_option("--samples", opts.config.quadrature_samples,
                 "Quadrature nodes for the uniform reference")
      ->check(CLI::Range(std::size_t{256}, std::size_t{1} << 24))
      ->capture_default_str();
  cmd.add_option("--threads", opts.config.threads, "Worker threads for statistics")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "failed writing '" + path + "'");
}

std::string join_fixed(const std::vector<double>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ' ';
    s += fixed6(values[i]);
  }
  return s;
}

struct Timed {
  EnhancementResult result;
  double ms;
};

Timed timed_enhance(const GrayImage& image, const EnhancementConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  auto result = enhance(image, config);
  const std::chrono::duration<double, std::milli> elapsed =
      std::chrono::steady_clock::now() - start;
  return {std::move(result), elapsed.count()};
}

int cmd_enhance(const EnhanceOptions& opts, std::ostream& out) {
  const GrayImage image = read_pgm_file(opts.input);
  const auto [result, ms] = timed_enhance(image, opts.config);
  write_pgm_file(opts.output, result.enhanced);
  if (!opts.report_path.empty()) {
    write_text(opts.report_path, format_report(make_report(opts.input, opts.config, result, ms)));
  }
  if (!opts.curve_path.empty()) {
    write_text(opts.curve_path, format_lut_csv(export_lut(result, kLutLevels)));
  }
  out << (result.converged ? "converged" : "not converged") << " after "
      << result.stages.size() << " stage(s), distance " << fixed6(result.trace.back().distance)
      << "\n";
  return result.converged ? kExitOk : kExitNotConverged;
}

int cmd_curve(const EnhanceOptions& opts, std::ostream& out) {
  const GrayImage image = read_pgm_file(opts.input);
  const auto result = enhance(image, opts.config);
  write_text(opts.output, format_lut_csv(export_lut(result, kLutLevels)));
  out << (result.converged ? "converged" : "not converged") << " after "
      << result.stages.size() << " stage(s)\n";
  return result.converged ? kExitOk : kExitNotConverged;
}

int cmd_stats(const std::string& input, const std::string& output, const LambdaParams& params,
              std::ostream& out) {
  const GrayImage image = read_pgm_file(input);
  const ImageStats stats = compute_stats(image, params);
  write_text(output, format_stats_csv(stats));
  out << "min_level: " << fixed6(stats.min_level) << "\n"
      << "max_level: " << fixed6(stats.max_level) << "\n";
  return kExitOk;
}

}  // namespace

std::string fixed6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value + 0.0);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

RunReport make_report(const std::string& input_path, const EnhancementConfig& config,
                      const EnhancementResult& result, double wall_clock_ms) {
  RunReport report;
  report.input_path = input_path;
  report.config = config;
  for (const auto& entry : result.trace) report.trace.emplace_back(entry.iteration, entry.distance);
  report.stage_count = result.stages.size();
  report.converged = result.converged;
  report.input_means = result.initial_stats.means;
  report.output_means = result.final_stats.means;
  report.wall_clock_ms = wall_clock_ms;
  return report;
}

std::string format_report(const RunReport& r) {
  std::ostringstream os;
  os << "input: " << r.input_path << "\n"
     << "k: " << r.config.params.k << "\n"
     << "lambda: " << fixed6(r.config.params.lambda) << "\n"
     << "gray_max: " << fixed6(r.config.params.gray_max) << "\n"
     << "epsilon: " << fixed6(r.config.epsilon) << "\n"
     << "max_iterations: " << r.config.max_iterations << "\n"
     << "quadrature_samples: " << r.config.quadrature_samples << "\n"
     << "beta_formula: " << kBetaFormulaTag << "\n"
     << "stages: " << r.stage_count << "\n"
     << "converged: " << (r.converged ? "true" : "false") << "\n"
     << "final_distance: " << (r.trace.empty() ? std::string("nan") : fixed6(r.trace.back().second))
     << "\n"
     << "input_means: " << join_fixed(r.input_means) << "\n"
     << "output_means: " << join_fixed(r.output_means) << "\n"
     << "wall_clock_ms: " << fixed6(r.wall_clock_ms) << "\n"
     << "trace:\n"
     << "m,distance\n";
  for (const auto& [m, d] : r.trace) os << m << "," << fixed6(d) << "\n";
  return os.str();
}

std::string format_stats_csv(const ImageStats& stats) {
  std::string csv = "i,b_lambda,h_lambda,H_lambda\n";
  for (std::size_t i = 0; i < stats.size(); ++i) {
    csv += std::to_string(i) + "," + fixed6(stats.means[i]) + "," + fixed6(stats.bins[i]) + "," +
           fixed6(stats.accumulated[i]) + "\n";
  }
  return csv;
}

std::string format_lut_csv(const std::vector<std::pair<double, double>>& lut) {
  std::string csv = "t,psi(t)\n";
  for (const auto& [t, psi] : lut) csv += fixed6(t) + "," + fixed6(psi) + "\n";
  return csv;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gray-level image enhancement with lambda-weighted Bernstein means", "grayenh"};
  app.require_subcommand(1);

  EnhanceOptions enhance_opts;
  auto* enhance_cmd = app.add_subcommand("enhance", "Enhance a PGM image");
  add_enhance_options(*enhance_cmd, enhance_opts);
  enhance_cmd->add_option("-o,--output", enhance_opts.output, "Output PGM image")->required();
  enhance_cmd->add_option("--report", enhance_opts.report_path, "Write a run report");
  enhance_cmd->add_option("--curve", enhance_opts.curve_path, "Write the 256-row LUT as CSV");

  EnhanceOptions curve_opts;
  auto* curve_cmd = app.add_subcommand("curve", "Write the enhancement LUT as CSV");
  add_enhance_options(*curve_cmd, curve_opts);
  curve_cmd->add_option("-o,--output", curve_opts.output, "Output CSV")->required();

  std::string stats_input;
  std::string stats_output;
  EnhancementConfig stats_config;
  auto* stats_cmd = app.add_subcommand("stats", "Write lambda-means and lambda-histograms as CSV");
  stats_cmd->add_option("input", stats_input, "Input PGM image")->required();
  add_model_options(*stats_cmd, stats_config);
  stats_cmd->add_option("-o,--output", stats_output, "Output CSV")->required();

  // CLI11 consumes the vector from the back.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*enhance_cmd) return cmd_enhance(enhance_opts, out);
    if (*curve_cmd) return cmd_curve(curve_opts, out);
    if (*stats_cmd) return cmd_stats(stats_input, stats_output, stats_config.params, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitUsage;
}

}  // namespace grayenh::cli
