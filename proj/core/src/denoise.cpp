#include "mod1/denoise.hpp"

#include <cmath>
#include <string>

#include "mod1/errors.hpp"
#include "mod1/metrics.hpp"

namespace mod1 {

double correlation(const RealEmbedding& gbar, const RealEmbedding& hbar) {
  if (gbar.v.size() != hbar.v.size())
    throw InvalidArgument("correlation: embeddings differ in dimension");
  return gbar.v.dot(hbar.v) / static_cast<double>(gbar.n());
}

Denoiser::Denoiser(int n, int k) : graph_(build_graph(n, k)) {
  if (n > 4096)
    throw InvalidArgument("dense spectral path supports n <= 4096, got " + std::to_string(n));
  lap_ = laplacian(graph_);
  spec_ = spectrum(lap_);
}

DenoiseResult Denoiser::denoise(const Mod1Series& y, double lambda,
                                const Mod1Series* truth) const {
  return iterated_denoise(y, lambda, 1, truth);
}

DenoiseResult Denoiser::iterated_denoise(const Mod1Series& y, double lambda, int iterations,
                                         const Mod1Series* truth) const {
  if (y.n() != n()) throw InvalidArgument("series length does not match denoiser grid");
  if (iterations < 1) throw InvalidArgument("iterations must be >= 1");

  const BlockLaplacian h{lambda, lap_};
  const double radius_sq = static_cast<double>(n());

  DenoiseResult res;
  Mod1Series current = y;
  for (int it = 0; it < iterations; ++it) {
    const RealEmbedding z = embed(current);
    res.trs = solve_trs_equality(h, spec_, z.v, radius_sq);
    ProjectionResult proj = project_to_mod1(RealEmbedding{res.trs.g});
    current = std::move(proj.series);
    res.degenerate_indices = std::move(proj.degenerate);
    if (truth != nullptr) res.wrap_rmse_trace.push_back(wrap_rmse(current, *truth));
  }
  res.denoised = std::move(current);
  if (truth != nullptr)
    res.correlation = correlation(RealEmbedding{res.trs.g}, embed(*truth));
  return res;
}

DenoiseResult denoise(const Mod1Series& y, const DenoiseParams& p, const Mod1Series* truth) {
  Denoiser d(y.n(), p.k);
  return d.denoise(y, p.lambda, truth);
}

DenoiseResult iterated_denoise(const Mod1Series& y, const DenoiseParams& p,
                               const Mod1Series* truth) {
  Denoiser d(y.n(), p.k);
  return d.iterated_denoise(y, p.lambda, p.iterations, truth);
}

}  // namespace mod1
