#pragma once

#include <utility>
#include <vector>

#include "psifun/matrix.hpp"
#include "psifun/phi_ladder.hpp"

namespace psifun {

enum class StepTermination { stagnation, cap };

/// One Newton-Schulz iteration record.  squaring_step is the Algorithm-2
/// loop index i (the step inverts phi_ell(A/2^{i-1})); seed-ladder rungs that
/// lift psi_1 to psi_j at the scaled argument are labelled -j.
struct IterationRecord {
  int squaring_step = 0;
  int iteration = 0;
  double err2 = 0.0;
};

struct StepSummary {
  int squaring_step = 0;
  StepTermination reason = StepTermination::stagnation;
  int iterations = 0;
};

struct ConvergenceTrace {
  std::vector<IterationRecord> records;
  std::vector<StepSummary> steps;

  void append(int squaring_step, const std::vector<double>& err2,
              StepTermination reason);
};

struct NSOptions {
  int max_iterations = 60;
  double coarse_threshold = 0.1;
};

struct NewtonSchulzResult {
  Matrix inverse;
  std::vector<double> err2_history;
  StepTermination reason = StepTermination::stagnation;
};

/// Newton-Schulz inversion X <- 2X - X M X, starting from X0.  Stops when
/// the previous difference norm err_1 both dropped below err_2 and sits under
/// the coarse threshold 0.1 (no tolerance parameter; the difference sequence
/// decreases monotonically while the iteration contracts, so its first uptick
/// below the threshold marks stagnation).  An exactly zero difference also
/// stops the loop: the iterate is a fixed point and no later iteration can
/// change it.  Hitting the iteration cap throws DivergenceError carrying the
/// err2 history.
NewtonSchulzResult newton_schulz(const Matrix& M, const Matrix& X0,
                                 const NSOptions& opts = {});

/// psi_1(B) by the swapped [d/d] Pade pair: solve(D_{d,1}(B), N_{d,1}(B)).
Matrix psi1eval(const Matrix& B, int d);

/// psi_ell(B) at the seed argument: psi1eval, then Newton-Schulz rungs
/// against phi_2(B), ..., phi_ell(B) from the supplied seed level.  Rung j
/// records, if a trace is given, carry squaring_step = -j.
///
/// The rungs are guaranteed to contract when the eigenvalues of B lie in the
/// strip R x i[-1, 1]; the scaling threshold theta only bounds the norm, so
/// callers needing the guarantee for wildly nonnormal arguments must pick
/// theta accordingly.  A diverging rung raises DivergenceError tagged -j.
Matrix psi_seed_ladder(const Matrix& B, int ell,
                       const std::vector<Matrix>& phis_at_B, int d,
                       const NSOptions& opts = {},
                       ConvergenceTrace* trace = nullptr);

/// Algorithm-2 squaring: starting from psi_ell(A/2^s), one Newton-Schulz
/// solve per level against phi_ell(A/2^{i-1}), i = s..1.
std::pair<Matrix, ConvergenceTrace> update_matrix(const Matrix& psi_top,
                                                  const PhiLadder& ladder,
                                                  int ell,
                                                  const NSOptions& opts = {});

struct PsiResult {
  Matrix psi;
  ConvergenceTrace trace;
  ScalingDecision scaling;
};

/// Full pipeline for psi_ell(A), ell >= 1: scale, Pade-seed the phi family,
/// lift to psi_ell at the seed, then alternate the doubling recurrence with
/// Newton-Schulz solves.  Levels are consumed as they are produced, so peak
/// memory stays independent of s; the arithmetic (and therefore the result
/// and the trace) is identical to composing phi_ladder, psi_seed_ladder and
/// update_matrix.
PsiResult psi_matrix(const Matrix& A, int ell, double theta = kDefaultTheta,
                     int d = kDefaultPadeDegree, const NSOptions& opts = {});

}  // namespace psifun
