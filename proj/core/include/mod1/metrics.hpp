#pragma once

#include <span>
#include <string>
#include <vector>

#include "mod1/angular.hpp"
#include "mod1/denoise.hpp"
#include "mod1/signals.hpp"

namespace mod1 {

/// sqrt(mean wrap_distance^2); in [0, 1/2].
double wrap_rmse(const Mod1Series& a, const Mod1Series& b);

/// sqrt(mean (a-b)^2) on raw residues, no wrap-around. Penalizes near-0 vs
/// near-1 matches; emitted alongside wrap_rmse so either convention can be
/// compared downstream.
double plain_rmse(const Mod1Series& a, const Mod1Series& b);

/// RMSE after removing the best global shift. The L2-optimal shift is the
/// mean difference; the nearest-integer variant is reported alongside since
/// residues only determine f up to an integer.
struct ShiftedRmse {
  double rmse = 0.0;
  double shift = 0.0;
  double rmse_integer = 0.0;
  double shift_integer = 0.0;
};

ShiftedRmse shifted_rmse(std::span<const double> fhat, std::span<const double> f);

/// One inequality evaluated on a trial, oriented as lhs >= rhs. Checks whose
/// hypotheses fail are marked, not failed.
struct BoundCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // lhs - rhs
  bool hypotheses_met = true;
  bool satisfied = true;
};

/// Correlation and smoothness inequalities for a single-pass denoise of a
/// noisy instance with known ground truth:
///   correlation-feasibility  corr >= 1 - 3d/2 - Sh + Sg            (d <= 1)
///   clean-smoothness         holder term >= Sh
///   solution-smoothness      Sg >= prefactor * Sz
///   correlation-full         corr >= 1 - 3d/2 - holder + pref * Sz (d <= 1)
///   correlation-simple       corr >= 1 - 3d/2 - holder   (d <= 1, 4*lambda*k < 1)
/// where d is the measured embedding distance, Sh/Sz/Sg are the scaled
/// quadratic forms (1/2n) v' H v, and the prefactor depends on whether the
/// noisy embedding is orthogonal to the null space of H.
std::vector<BoundCheck> run_bound_checks(const SampledInstance& inst,
                                         const DenoiseResult& result,
                                         const DenoiseParams& params,
                                         const SignalSpec& signal, const Denoiser& ctx);

struct MetricsReport {
  double wrap_rmse_mod1 = 0.0;
  double plain_rmse_mod1 = 0.0;
  double shifted_rmse_f = 0.0;
  double optimal_shift = 0.0;
  double shifted_rmse_f_int = 0.0;
  double integer_shift = 0.0;
  double correlation = 0.0;
  std::vector<BoundCheck> bound_checks;
};

/// Headline numbers for one recovered instance: residue errors of the
/// denoised series, shift-aligned sample errors of the unwrapped estimate,
/// and the embedding correlation against the clean residues. Bound checks
/// are left empty; run_bound_checks fills them when wanted.
MetricsReport evaluate_recovery(const SampledInstance& inst, const Mod1Series& denoised,
                                std::span<const double> unwrapped);

}  // namespace mod1
