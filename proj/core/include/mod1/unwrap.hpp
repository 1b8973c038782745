#pragma once

#include <vector>

#include "mod1/angular.hpp"
#include "mod1/grid_graph.hpp"

namespace mod1 {

/// Three-way threshold: -1 for t >= zeta, 0 for |t| < zeta, +1 for t <= -zeta.
int sign_threshold(double t, double zeta);

enum class UnwrapMethod { quotient_tracker, least_squares };

struct UnwrapResult {
  std::vector<double> samples;  // estimate of f up to a global shift
  std::vector<int> quotients;   // quotient_tracker only, q[0] = 0
  UnwrapMethod method = UnwrapMethod::quotient_tracker;
  double residual = 0.0;  // ||T f - b|| for least_squares
};

/// Sequential unwrapping: accumulate quotient estimates along the grid and
/// add them back to the residues. Exact when consecutive clean samples stay
/// within zeta of each other.
UnwrapResult quotient_tracker(const Mod1Series& r, double zeta);

/// One equation per edge (i, j), i < j: f_i - f_j = sign_zeta(y_i - y_j) +
/// (y_i - y_j). The coefficient matrix has +1/-1 per row, so T 1 = 0 and
/// T^T T equals the graph Laplacian.
struct DifferenceSystem {
  std::vector<std::pair<int, int>> edges;  // i < j, lexicographic
  Vector rhs;
  double zeta = 0.5;
  int n = 0;

  Matrix dense() const;                           // |E| x n, for small n
  Vector apply(const Vector& f) const;            // T f
  Vector apply_transpose(const Vector& b) const;  // T^T b
};

DifferenceSystem build_difference_system(const Mod1Series& y, const NeighborGraph& g,
                                         double zeta);

/// Minimum-norm least-squares solve of the difference system; the returned
/// samples have mean zero (the 1-direction is deflated out of the normal
/// equations).
UnwrapResult ols_unwrap(const Mod1Series& y, const NeighborGraph& g, double zeta);

}  // namespace mod1
