// psifun: inverse matrix phi-functions by scaling and modified squaring.
//
// Subcommands:
//   compute      psi_ell(A) for a Matrix Market input
//   table1       Pade error vs computable bound on the heat-equation operator
//   scalar-scan  CSV scans of the scalar convergence ratios
//   testmat      built-in test operator generation (+ spectrum certificate)

#include <CLI11.hpp>
#include <iostream>

#include "psifun/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Inverse matrix phi-functions psi_ell(A) = phi_ell(A)^{-1}"};
  app.require_subcommand(1);

  psifun::ComputeOptions copt;
  CLI::App* compute = app.add_subcommand(
      "compute", "Compute psi_ell(A) for a Matrix Market matrix");
  compute->add_option("--input", copt.input, "input matrix (.mtx)")
      ->required();
  compute->add_option("--output", copt.output, "output matrix (.mtx)")
      ->required();
  compute->add_option("--ell", copt.ell, "order of the psi-function (>= 1)");
  compute->add_option("--theta", copt.theta, "scaling threshold");
  compute->add_option("--degree", copt.degree, "Pade degree for the seeds");
  std::string trace_path;
  compute->add_option("--trace", trace_path,
                      "write the Newton-Schulz trace CSV here");

  psifun::Table1Options topt;
  CLI::App* table1 = app.add_subcommand(
      "table1", "Pade error vs bound for psi_1 on the heat-equation operator");
  table1->add_option("--n", topt.n, "matrix order (default 1024)");

  psifun::ScalarScanOptions sopt;
  CLI::App* scan =
      app.add_subcommand("scalar-scan", "CSV scans of the scalar ratios");
  std::string mode = "h";
  scan->add_option("--mode", mode, "h (h_ell) or conv (ratio along a ray)");
  scan->add_option("--ell", sopt.ells, "orders to scan (repeatable)");
  scan->add_option("--tmin", sopt.t_min, "grid start");
  scan->add_option("--tmax", sopt.t_max, "grid end");
  scan->add_option("--points", sopt.points, "grid size");
  scan->add_option("--dir-re", sopt.dir_re, "ray direction, real part");
  scan->add_option("--dir-im", sopt.dir_im, "ray direction, imaginary part");
  std::string scan_out;
  scan->add_option("--output", scan_out, "CSV file (stdout when absent)");

  psifun::TestmatOptions mopt;
  CLI::App* testmat =
      app.add_subcommand("testmat", "Generate a built-in test operator");
  testmat->add_option("--kind", mopt.kind, "a1 or a2")->required();
  testmat->add_option("--n", mopt.n, "a1 order");
  testmat->add_option("--m", mopt.m, "a2 interior points per side");
  testmat->add_option("--conv-x", mopt.conv_x, "a2 x-convection coefficient");
  testmat->add_option("--conv-y", mopt.conv_y, "a2 y-convection coefficient");
  testmat->add_option("--output", mopt.output, "output matrix (.mtx)")
      ->required();
  testmat->add_flag("--certify", mopt.certify,
                    "report the spectrum certificate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : psifun::kExitUsage;
  }

  if (compute->parsed()) {
    if (!trace_path.empty()) copt.trace = trace_path;
    return psifun::cmd_compute(copt, std::cerr);
  }
  if (table1->parsed()) return psifun::cmd_table1(topt, std::cout, std::cerr);
  if (scan->parsed()) {
    if (mode == "conv")
      sopt.mode = psifun::ScalarScanOptions::Mode::conv;
    else if (mode != "h") {
      std::cerr << "psifun scalar-scan: unknown mode '" << mode << "'\n";
      return psifun::kExitUsage;
    }
    if (!scan_out.empty()) sopt.output = scan_out;
    return psifun::cmd_scalar_scan(sopt, std::cout, std::cerr);
  }
  if (testmat->parsed())
    return psifun::cmd_testmat(mopt, std::cout, std::cerr);
  return psifun::kExitUsage;
}
