#pragma once

#include <vector>

#include "mod1/grid_graph.hpp"

namespace mod1 {

/// n residues in [0, 1).
struct Mod1Series {
  std::vector<double> values;

  int n() const { return static_cast<int>(values.size()); }
};

/// 2n reals laid out as [cos half; sin half]. Embeddings of a Mod1Series sit
/// on the per-entry unit circle (norm^2 = n); general vectors (e.g. solver
/// output) need not.
struct RealEmbedding {
  Vector v;

  int n() const { return static_cast<int>(v.size()) / 2; }
  double re(int i) const { return v(i); }
  double im(int i) const { return v(n() + i); }
};

/// Canonical reduction into [0, 1) for any real x.
double reduce_mod1(double x);

/// Map residues to unit-circle points (cos 2*pi*v, sin 2*pi*v).
RealEmbedding embed(const Mod1Series& s);

struct ProjectionResult {
  Mod1Series series;
  std::vector<int> degenerate;  // indices with |g_i| < 1e-12, emitted as 0
};

/// Radial projection back to residues via atan2; near-zero entries are
/// flagged rather than fatal.
ProjectionResult project_to_mod1(const RealEmbedding& g);

/// Circle metric min(|a-b|, 1-|a-b|) on [0,1], values in [0, 1/2].
double wrap_distance(double a, double b);

/// Wrap-distance guarantee for the radial projection: if every |g_i - h_i|
/// <= eps with eps in (0, 1/2), the projected residue is within
/// asin(eps/(1-eps))/pi of the true one.
double projection_wrap_bound(double eps);

}  // namespace mod1
