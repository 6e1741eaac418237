#pragma once

// Experiment drivers behind the hexsum command line tool.
//
// Every driver returns a Report and an exit status: 0 when all assertions
// hold, 1 when one fails, 2 for configuration or I/O errors. Rows carry the
// parameters, grid size and tolerance needed to reproduce them.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hexsum/report.hpp"

namespace hexsum {

enum class Command { verify, kernel, bernstein, approximate, rates, kfun };
enum class OutputFormat { csv, json };

inline constexpr int kExitPass = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitConfig = 2;

struct ExperimentConfig {
  Command command = Command::verify;
  /// rho = 1 - 2^-k for k_min <= k <= k_max; kfun uses delta = 2^-k.
  int k_min = 1;
  int k_max = 7;
  int r = 1;
  /// K-functional order.
  int n = 1;
  /// Norm exponent; kInfinity for the sup norm.
  double p = 2.0;
  /// Grid points per axis; empty means automatic.
  std::optional<int> grid_n;
  std::optional<std::string> input_path;
  std::optional<std::string> output_path;
  OutputFormat format = OutputFormat::csv;
  std::uint64_t seed = 0;
  /// Built-in test function when no input file is given (see family_by_name).
  std::string family = "analytic";
};

struct ExperimentResult {
  int exit_code = kExitPass;
  Report report;
  /// Human-readable diagnostics, one per line.
  std::vector<std::string> messages;
};

Command parse_command(const std::string& name);
std::string command_name(Command c);

/// Throws std::invalid_argument when the ladder or orders are out of range.
void validate_config(const ExperimentConfig& config);

/// rho = 1 - 2^-k over the configured ladder.
std::vector<double> rho_ladder(const ExperimentConfig& config);

ExperimentResult run_verify(const ExperimentConfig& config);
ExperimentResult run_kernel(const ExperimentConfig& config);
ExperimentResult run_bernstein(const ExperimentConfig& config);
ExperimentResult run_approximate(const ExperimentConfig& config);
ExperimentResult run_rates(const ExperimentConfig& config);
ExperimentResult run_kfun(const ExperimentConfig& config);

/// Dispatches on config.command; configuration errors become exit code 2.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct SlopeFit {
  double slope;
  double intercept;
  double stderr_slope;
};

/// Ordinary least squares of y on x. Needs at least three points.
SlopeFit fit_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Grid size for synthesizing degree-d functions: 4 d + 4 points per axis.
int spectral_grid_size(int degree) noexcept;

/// Lower-proxy / upper constant that holds for every candidate h:
/// max(1, delta^n sup_nu nu!/(nu-n)! (1-delta)^nu) for p = 2, and
/// max(1, delta^n (1-delta)^n int |d^n P|) otherwise.
double kfun_apriori_constant(double delta, int n, double p);

}  // namespace hexsum
