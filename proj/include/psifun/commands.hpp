#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "psifun/phi_ladder.hpp"
#include "psifun/psi_eval.hpp"

namespace psifun {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDivergence = 2;
inline constexpr int kExitUsage = 3;

struct ComputeOptions {
  std::string input;
  std::string output;
  std::optional<std::string> trace;
  int ell = 1;
  double theta = kDefaultTheta;
  int degree = kDefaultPadeDegree;
};

/// Reads a Matrix Market file, runs the psi pipeline, writes the result and
/// (optionally) the per-iteration trace CSV `step,iteration,err2`.
int cmd_compute(const ComputeOptions& opts, std::ostream& diag);

struct Table1Row {
  int d = 0;
  double err = 0.0;      // ||psi_1(B) - R_{d,1}(B)||_inf against the oracle
  double err_est = 0.0;  // s(d,4)/min|D_{d,1}| on |z| <= 4
};

struct Table1Result {
  int n = 0;
  int s = 0;
  std::array<Table1Row, 4> rows;  // d = 6..9
};

/// The error-vs-estimate comparison for the [d/d] approximants of psi_1 at
/// the scaled heat-equation operator (n x n, scaled by the pipeline rule
/// with theta = 4).
Table1Result run_table1(int n);

struct Table1Options {
  int n = 1024;
};
int cmd_table1(const Table1Options& opts, std::ostream& out, std::ostream& diag);

struct ScalarScanOptions {
  enum class Mode { h, conv };
  Mode mode = Mode::h;
  std::vector<int> ells;
  double t_min = 0.0;
  double t_max = 100.0;
  int points = 10000;
  double dir_re = -1.0;  // ray direction for conv mode, z = t (dir_re + i dir_im)
  double dir_im = 0.0;
  std::optional<std::string> output;  // stdout when absent
};

/// CSV scans of h_ell(t) or conv_ratio(ell, t*dir) over a t-grid.
int cmd_scalar_scan(const ScalarScanOptions& opts, std::ostream& out,
                    std::ostream& diag);

struct TestmatOptions {
  std::string kind;  // "a1" or "a2"
  int n = 1024;      // a1 order
  int m = 100;       // a2 interior points per side
  double conv_x = 10.0;
  double conv_y = 100.0;
  std::string output;
  bool certify = false;
};

/// Generates one of the built-in test operators, writes it in Matrix Market
/// form, and optionally reports the spectrum certificate.
int cmd_testmat(const TestmatOptions& opts, std::ostream& out,
                std::ostream& diag);

/// Trace CSV used by cmd_compute and the experiment harness.
void write_trace_csv(std::ostream& out, const ConvergenceTrace& trace);

}  // namespace psifun
