#include "mod1/metrics.hpp"

#include <cmath>

#include "mod1/errors.hpp"

namespace mod1 {

double wrap_rmse(const Mod1Series& a, const Mod1Series& b) {
  if (a.n() != b.n()) throw InvalidArgument("wrap_rmse: length mismatch");
  double s = 0.0;
  for (int i = 0; i < a.n(); ++i) {
    const double d = wrap_distance(a.values[i], b.values[i]);
    s += d * d;
  }
  return std::sqrt(s / a.n());
}

double plain_rmse(const Mod1Series& a, const Mod1Series& b) {
  if (a.n() != b.n()) throw InvalidArgument("plain_rmse: length mismatch");
  double s = 0.0;
  for (int i = 0; i < a.n(); ++i) {
    const double d = a.values[i] - b.values[i];
    s += d * d;
  }
  return std::sqrt(s / a.n());
}

ShiftedRmse shifted_rmse(std::span<const double> fhat, std::span<const double> f) {
  if (fhat.size() != f.size()) throw InvalidArgument("shifted_rmse: length mismatch");
  const int n = static_cast<int>(f.size());
  ShiftedRmse out;
  double mean_diff = 0.0;
  for (int i = 0; i < n; ++i) mean_diff += f[i] - fhat[i];
  mean_diff /= n;
  out.shift = mean_diff;
  out.shift_integer = std::round(mean_diff);
  double s = 0.0, si = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = fhat[i] + out.shift - f[i];
    const double ei = fhat[i] + out.shift_integer - f[i];
    s += e * e;
    si += ei * ei;
  }
  out.rmse = std::sqrt(s / n);
  out.rmse_integer = std::sqrt(si / n);
  return out;
}

MetricsReport evaluate_recovery(const SampledInstance& inst, const Mod1Series& denoised,
                                std::span<const double> unwrapped) {
  MetricsReport rep;
  rep.wrap_rmse_mod1 = wrap_rmse(denoised, inst.clean_mod1);
  rep.plain_rmse_mod1 = plain_rmse(denoised, inst.clean_mod1);
  const ShiftedRmse sr = shifted_rmse(unwrapped, inst.clean_f);
  rep.shifted_rmse_f = sr.rmse;
  rep.optimal_shift = sr.shift;
  rep.shifted_rmse_f_int = sr.rmse_integer;
  rep.integer_shift = sr.shift_integer;
  rep.correlation = correlation(embed(denoised), embed(inst.clean_mod1));
  return rep;
}

std::vector<BoundCheck> run_bound_checks(const SampledInstance& inst,
                                         const DenoiseResult& result,
                                         const DenoiseParams& params,
                                         const SignalSpec& signal, const Denoiser& ctx) {
  const int n = inst.grid.n;
  const double k = params.k;
  const double lambda = params.lambda;
  const BlockLaplacian h{lambda, ctx.lap()};

  const RealEmbedding hbar = embed(inst.clean_mod1);
  const RealEmbedding zbar = embed(inst.noisy_mod1);
  const Vector& ghat = result.trs.g;

  const double delta = measure_delta(inst.noisy_mod1, inst.clean_mod1);
  const double corr = ghat.dot(hbar.v) / n;
  const double s_clean = h.quad(hbar.v) / (2.0 * n);
  const double s_noisy = h.quad(zbar.v) / (2.0 * n);
  const double s_sol = h.quad(ghat) / (2.0 * n);

  const double alpha = signal.holder_alpha;
  const double m = signal.holder_m;
  const double holder_term = lambda * M_PI * M_PI * m * m *
                             std::pow(2.0 * k, 2.0 * alpha + 1.0) /
                             std::pow(static_cast<double>(n), 2.0 * alpha);

  // Null-space orientation of the noisy embedding decides the prefactor.
  bool orthogonal = false;
  if (lambda > 0.0) {
    const Vector& q1 = ctx.lap_spectrum().eigenvectors.col(0);
    const double c_re = zbar.v.head(n).dot(q1);
    const double c_im = zbar.v.tail(n).dot(q1);
    orthogonal = std::sqrt(c_re * c_re + c_im * c_im) <= 1e-9 * zbar.v.norm();
  }
  const double shrink = std::sin(M_PI / (2.0 * n));
  const double pref =
      orthogonal
          ? 1.0 / std::pow(1.0 + 4.0 * lambda * k - 4.0 * lambda * k * shrink * shrink, 2.0)
          : 1.0 / std::pow(1.0 + 4.0 * lambda * k, 2.0);

  const bool delta_ok = delta <= 1.0;
  const bool lambda_small = 4.0 * lambda * k < 1.0;

  std::vector<BoundCheck> checks;
  auto push = [&checks](std::string name, double lhs, double rhs, bool hyp) {
    BoundCheck c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.margin = lhs - rhs;
    c.hypotheses_met = hyp;
    const double tol = 1e-9 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
    c.satisfied = !hyp || c.margin >= -tol;
    checks.push_back(std::move(c));
  };

  push("correlation-feasibility", corr, 1.0 - 1.5 * delta - s_clean + s_sol, delta_ok);
  push("clean-smoothness", holder_term, s_clean, true);
  push("solution-smoothness", s_sol, pref * s_noisy, !orthogonal || lambda_small);
  push("correlation-full", corr, 1.0 - 1.5 * delta - holder_term + pref * s_noisy,
       delta_ok && (!orthogonal || lambda_small));
  push("correlation-simple", corr, 1.0 - 1.5 * delta - holder_term,
       delta_ok && lambda_small);
  return checks;
}

}  // namespace mod1
