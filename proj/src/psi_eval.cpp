#include "psifun/psi_eval.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "psifun/errors.hpp"
#include "psifun/pade.hpp"

namespace psifun {

void ConvergenceTrace::append(int squaring_step,
                              const std::vector<double>& err2,
                              StepTermination reason) {
  for (std::size_t k = 0; k < err2.size(); ++k)
    records.push_back({squaring_step, (int)k + 1, err2[k]});
  steps.push_back({squaring_step, reason, (int)err2.size()});
}

NewtonSchulzResult newton_schulz(const Matrix& M, const Matrix& X0,
                                 const NSOptions& opts) {
  if (!M.square() || M.rows() != X0.rows() || !X0.square())
    throw std::invalid_argument("newton_schulz: shape mismatch");
  if (opts.max_iterations < 1)
    throw std::invalid_argument("newton_schulz: max_iterations >= 1");

  NewtonSchulzResult res;
  Matrix X = X0;
  Matrix XM, XMX;
  double err1 = std::numeric_limits<double>::infinity();
  double err2 = std::numeric_limits<double>::infinity();

  while (err1 >= err2 || err1 >= opts.coarse_threshold) {
    if ((int)res.err2_history.size() >= opts.max_iterations) {
      res.reason = StepTermination::cap;
      throw DivergenceError(
          "newton_schulz: no stagnation within " +
              std::to_string(opts.max_iterations) + " iterations",
          res.err2_history);
    }
    // X_new = 2 X - (X M) X; the association is fixed for reproducibility.
    matmul_into(XM, X, M);
    matmul_into(XMX, XM, X);
    scale_inplace(XMX, -1.0);
    axpy(2.0, X, XMX);

    err1 = err2;
    err2 = inf_norm_diff(XMX, X);
    std::swap(X, XMX);
    res.err2_history.push_back(err2);
    if (!std::isfinite(err2)) {
      res.reason = StepTermination::cap;
      throw DivergenceError("newton_schulz: iterates overflowed",
                            res.err2_history);
    }
    // Exact ties at the bottom stop the loop: a zero difference is a fixed
    // point, and an exactly repeating difference below the coarse threshold
    // is a roundoff two-cycle; the >= guard would spin on either until the
    // cap.
    if (err2 == 0.0) break;
    if (err2 == err1 && err2 < opts.coarse_threshold) break;
  }
  res.inverse = std::move(X);
  res.reason = StepTermination::stagnation;
  return res;
}

Matrix psi1eval(const Matrix& B, int d) {
  if (!B.square()) throw std::invalid_argument("psi1eval: B must be square");
  const PadeRational r = psi_pade_coeffs(d, 1);
  const std::size_t n = B.rows();

  Matrix num(n, n), den(n, n);
  add_scaled_identity(num, r.numerator[0]);
  add_scaled_identity(den, r.denominator[0]);
  Matrix power = B, next;
  for (int k = 1; k <= d; ++k) {
    if (k > 1) {
      matmul_into(next, power, B);
      std::swap(power, next);
    }
    axpy(r.numerator[k], power, num);
    axpy(r.denominator[k], power, den);
  }
  return solve(std::move(den), std::move(num));
}

Matrix psi_seed_ladder(const Matrix& B, int ell,
                       const std::vector<Matrix>& phis_at_B, int d,
                       const NSOptions& opts, ConvergenceTrace* trace) {
  if (ell < 1)
    throw std::invalid_argument("psi_seed_ladder: requires ell >= 1");
  if ((int)phis_at_B.size() < ell + 1)
    throw std::invalid_argument(
        "psi_seed_ladder: seed level must hold phi_0..phi_ell");
  Matrix X = psi1eval(B, d);
  for (int j = 2; j <= ell; ++j) {
    try {
      NewtonSchulzResult r = newton_schulz(phis_at_B[j], X, opts);
      if (trace) trace->append(-j, r.err2_history, r.reason);
      X = std::move(r.inverse);
    } catch (DivergenceError& e) {
      if (trace) trace->append(-j, e.err2_history(), StepTermination::cap);
      e.set_squaring_step(-j);
      throw;
    }
  }
  return X;
}

std::pair<Matrix, ConvergenceTrace> update_matrix(const Matrix& psi_top,
                                                  const PhiLadder& ladder,
                                                  int ell,
                                                  const NSOptions& opts) {
  if (ell > ladder.ell_max)
    throw std::invalid_argument("update_matrix: ladder lacks phi_ell");
  ConvergenceTrace trace;
  Matrix X = psi_top;
  for (int i = ladder.s; i >= 1; --i) {
    try {
      NewtonSchulzResult r = newton_schulz(ladder.phi(i - 1, ell), X, opts);
      trace.append(i, r.err2_history, r.reason);
      X = std::move(r.inverse);
    } catch (DivergenceError& e) {
      trace.append(i, e.err2_history(), StepTermination::cap);
      e.set_squaring_step(i);
      throw;
    }
  }
  return {std::move(X), std::move(trace)};
}

PsiResult psi_matrix(const Matrix& A, int ell, double theta, int d,
                     const NSOptions& opts) {
  if (!A.square()) throw std::invalid_argument("psi_matrix: A must be square");
  if (ell < 1) throw std::invalid_argument("psi_matrix: requires ell >= 1");

  PsiResult out;
  out.scaling = scaling_exponent(A, theta);
  const Matrix B = std::exp2(-out.scaling.s) * A;

  std::vector<Matrix> level = phi_seed(B, ell, d);
  Matrix X = psi_seed_ladder(B, ell, level, d, opts, &out.trace);

  for (int i = out.scaling.s; i >= 1; --i) {
    level = square_step(level);  // now at argument A/2^{i-1}
    try {
      NewtonSchulzResult r = newton_schulz(level[ell], X, opts);
      out.trace.append(i, r.err2_history, r.reason);
      X = std::move(r.inverse);
    } catch (DivergenceError& e) {
      out.trace.append(i, e.err2_history(), StepTermination::cap);
      e.set_squaring_step(i);
      throw;
    }
  }
  out.psi = std::move(X);
  return out;
}

}  // namespace psifun
