#include "psifun/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "psifun/errors.hpp"
#include "psifun/mmio.hpp"
#include "psifun/oracle.hpp"
#include "psifun/pade.hpp"
#include "psifun/scalar_phi.hpp"
#include "psifun/test_matrices.hpp"

namespace psifun {

namespace {

std::string fmt(const char* f, double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

void write_trace_csv(std::ostream& out, const ConvergenceTrace& trace) {
  out << "step,iteration,err2\n";
  for (const IterationRecord& r : trace.records)
    out << r.squaring_step << "," << r.iteration << ","
        << fmt("%.17g", r.err2) << "\n";
}

int cmd_compute(const ComputeOptions& opts, std::ostream& diag) {
  Matrix A;
  try {
    A = mm_read(opts.input);
  } catch (const ParseError& e) {
    diag << "psifun compute: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!A.square()) {
    diag << "psifun compute: matrix must be square (got " << A.rows() << "x"
         << A.cols() << ")\n";
    return kExitUsage;
  }
  if (opts.ell < 1) {
    diag << "psifun compute: --ell must be >= 1\n";
    return kExitUsage;
  }

  PsiResult result;
  try {
    result = psi_matrix(A, opts.ell, opts.theta, opts.degree);
  } catch (const DivergenceError& e) {
    diag << "psifun compute: Newton-Schulz diverged at step "
         << e.squaring_step()
         << " (is the spectrum inside the open left half-plane?): " << e.what()
         << "\n";
    return kExitDivergence;
  } catch (const std::exception& e) {
    diag << "psifun compute: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    mm_write(opts.output, result.psi);
    if (opts.trace) {
      std::ofstream tf(*opts.trace);
      if (!tf) throw ParseError("cannot open '" + *opts.trace + "'", 0);
      write_trace_csv(tf, result.trace);
    }
  } catch (const std::exception& e) {
    diag << "psifun compute: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

Table1Result run_table1(int n) {
  Table1Result t;
  t.n = n;
  const Matrix A = make_a1(n);
  const ScalingDecision dec = scaling_exponent(A, 4.0);
  t.s = dec.s;
  const Matrix B = std::exp2(-dec.s) * A;
  const Matrix reference = psi_oracle(B, 1);
  for (int k = 0; k < 4; ++k) {
    const int d = 6 + k;
    t.rows[k].d = d;
    t.rows[k].err = inf_norm_diff(psi1eval(B, d), reference);
    t.rows[k].err_est = compute_error_bound(d, 4.0).total;
  }
  return t;
}

int cmd_table1(const Table1Options& opts, std::ostream& out,
               std::ostream& diag) {
  if (opts.n < 2) {
    diag << "psifun table1: --n must be >= 2\n";
    return kExitUsage;
  }
  const Table1Result t = run_table1(opts.n);
  out << "# psi_1 Pade error vs bound, heat-equation operator, n = " << t.n
      << ", s = " << t.s << "\n";
  out << "d      ";
  for (const Table1Row& r : t.rows) out << "  " << r.d << "       ";
  out << "\nerr    ";
  for (const Table1Row& r : t.rows) out << "  " << fmt("%.1e", r.err);
  out << "\nerr_est";
  for (const Table1Row& r : t.rows) out << "  " << fmt("%.1e", r.err_est);
  out << "\n";
  return kExitOk;
}

int cmd_scalar_scan(const ScalarScanOptions& opts, std::ostream& out,
                    std::ostream& diag) {
  if (opts.ells.empty()) {
    diag << "psifun scalar-scan: at least one --ell is required\n";
    return kExitUsage;
  }
  if (opts.points < 2 || !(opts.t_max > opts.t_min)) {
    diag << "psifun scalar-scan: bad t-grid\n";
    return kExitUsage;
  }
  const int min_ell = opts.mode == ScalarScanOptions::Mode::h ? 2 : 1;
  for (int ell : opts.ells)
    if (ell < min_ell || ell > kMaxPhiOrder) {
      diag << "psifun scalar-scan: ell " << ell << " out of range\n";
      return kExitUsage;
    }

  std::ofstream file;
  if (opts.output) {
    file.open(*opts.output);
    if (!file) {
      diag << "psifun scalar-scan: cannot open '" << *opts.output << "'\n";
      return kExitUsage;
    }
  }
  std::ostream& os = opts.output ? file : out;

  os << "ell,t,value\n";
  for (int ell : opts.ells) {
    for (int k = 0; k < opts.points; ++k) {
      const double t =
          opts.t_min + (opts.t_max - opts.t_min) * k / (opts.points - 1);
      double v;
      if (opts.mode == ScalarScanOptions::Mode::h) {
        v = h_ell(ell, t);
      } else {
        v = conv_ratio(ell, t * Complex(opts.dir_re, opts.dir_im));
      }
      os << ell << "," << fmt("%.17g", t) << "," << fmt("%.17g", v) << "\n";
    }
  }
  return kExitOk;
}

int cmd_testmat(const TestmatOptions& opts, std::ostream& out,
                std::ostream& diag) {
  Matrix A;
  if (opts.kind == "a1") {
    if (opts.n < 2) {
      diag << "psifun testmat: --n must be >= 2\n";
      return kExitUsage;
    }
    A = make_a1(opts.n);
  } else if (opts.kind == "a2") {
    if (opts.m < 2) {
      diag << "psifun testmat: --m must be >= 2\n";
      return kExitUsage;
    }
    A = make_a2(opts.m, opts.conv_x, opts.conv_y);
  } else {
    diag << "psifun testmat: unknown kind '" << opts.kind << "' (a1|a2)\n";
    return kExitUsage;
  }

  try {
    mm_write(opts.output, A);
  } catch (const std::exception& e) {
    diag << "psifun testmat: " << e.what() << "\n";
    return kExitUsage;
  }

  if (opts.certify) {
    SpectrumCertificate cert;
    if (opts.kind == "a1") {
      const Grid1D g = make_grid1d(opts.n);
      std::vector<double> d(g.nodes.size());
      for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::cos(g.nodes[i]);
      cert = certify_left_half_plane(A, d);
    } else {
      cert = certify_left_half_plane(A);
    }
    out << "spectrum: "
        << (cert.certified() ? "certified in open left half-plane"
                             : "inconclusive")
        << "\n";
  }
  return kExitOk;
}

}  // namespace psifun
