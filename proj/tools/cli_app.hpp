#pragma once

#include <array>
#include <string>

namespace magvac::cli {

// Fully resolved invocation: one subcommand plus every knob it reads.
// --temperature T is already folded into beta = 1/T (T = 0 means beta = inf).
struct RunConfig {
  std::string subcommand;
  std::array<double, 3> masses{1.0, 2.0, 3.0};
  double beta = 0.0;

  double q_min = 0.0;
  double q_max = 10.0;
  int q_steps = 11;

  double a_min = 0.0;
  double a_max = 10.0;
  int a_steps = 11;

  std::string field_path;
  double epsilon = 1.0;
  double div_threshold = 1e-3;

  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int threads = 1;

  std::string out_path;  // empty -> stdout
};

// Execute a validated config. Returns the process exit code:
// 0 success, 3 domain/content error, 4 convergence or selftest failure,
// 5 I/O error.
int run(const RunConfig& config);

// Parse argv and run. Adds exit code 2 for usage errors.
int run_cli(int argc, const char* const* argv);

}  // namespace magvac::cli
