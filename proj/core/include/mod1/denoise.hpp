#pragma once

#include <optional>
#include <vector>

#include "mod1/angular.hpp"
#include "mod1/grid_graph.hpp"
#include "mod1/trs.hpp"

namespace mod1 {

struct DenoiseParams {
  int k = 2;
  double lambda = 0.1;
  int iterations = 1;  // 1 = single pass, >1 = iterated re-embedding
};

struct DenoiseResult {
  Mod1Series denoised;
  TrsSolution trs;  // solution of the final pass
  std::vector<int> degenerate_indices;
  std::optional<double> correlation;       // (1/n) <h, g> when truth supplied
  std::vector<double> wrap_rmse_trace;     // per pass, when truth supplied
};

/// (1/n) <g, h> for two 2n embeddings; in [-1, 1] when both have norm^2 = n.
double correlation(const RealEmbedding& gbar, const RealEmbedding& hbar);

/// Graph, Laplacian and spectrum for one (n, k), shareable read-only across
/// threads; solving is a pure function of (series, lambda).
class Denoiser {
 public:
  Denoiser(int n, int k);

  int n() const { return graph_.n; }
  int k() const { return graph_.k; }
  const NeighborGraph& graph() const { return graph_; }
  const Matrix& lap() const { return lap_; }
  const Spectrum& lap_spectrum() const { return spec_; }

  DenoiseResult denoise(const Mod1Series& y, double lambda,
                        const Mod1Series* truth = nullptr) const;
  DenoiseResult iterated_denoise(const Mod1Series& y, double lambda, int iterations,
                                 const Mod1Series* truth = nullptr) const;

 private:
  NeighborGraph graph_;
  Matrix lap_;
  Spectrum spec_;
};

/// One-shot conveniences that build the Denoiser internally.
DenoiseResult denoise(const Mod1Series& y, const DenoiseParams& p,
                      const Mod1Series* truth = nullptr);
DenoiseResult iterated_denoise(const Mod1Series& y, const DenoiseParams& p,
                               const Mod1Series* truth = nullptr);

}  // namespace mod1
