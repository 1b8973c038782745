#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace mod1 {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Uniform grid x_i = (i-1)/(n-1) on [0,1], n >= 2.
struct UniformGrid {
  int n = 0;
  std::vector<double> points;

  static UniformGrid make(int n);
};

/// Band graph on {1..n}: vertices i,j adjacent iff |i-j| <= k, 1 <= k <= n-1.
/// Edges stored as (i,j) with i < j, lexicographic. Degrees lie in [k, 2k].
struct NeighborGraph {
  int n = 0;
  int k = 0;
  std::vector<std::pair<int, int>> edges;  // 0-based
  std::vector<int> degrees;
};

NeighborGraph build_graph(int n, int k);

/// Dense combinatorial Laplacian: diag(deg) minus adjacency.
Matrix laplacian(const NeighborGraph& g);

/// Full eigendecomposition of a symmetric matrix, eigenvalues ascending,
/// each eigenvector's first entry above 1e-12 in magnitude made positive so
/// repeated runs give identical output.
struct Spectrum {
  Vector eigenvalues;
  Matrix eigenvectors;  // orthonormal columns

  int size() const { return static_cast<int>(eigenvalues.size()); }
};

Spectrum spectrum(const Matrix& sym);

/// The 2n x 2n operator lambda * diag(L, L), kept as (lambda, L) and applied
/// blockwise to the [first-half; second-half] layout of 2n vectors. For
/// lambda > 0 its null space is exactly two-dimensional.
struct BlockLaplacian {
  double lambda = 0.0;
  Matrix lap;  // n x n

  int n() const { return static_cast<int>(lap.rows()); }

  /// H v for a 2n vector.
  Vector apply(const Vector& v) const;
  /// v^T H v.
  double quad(const Vector& v) const;
};

/// Eigenvalue sanity for L: largest <= 4k (Gershgorin with deg <= 2k) and
/// second-smallest >= 4k sin^2(pi/2n) (edge-connectivity lower bound).
struct SpectralBoundsReport {
  double smallest = 0.0;            // should be 0 up to solver tolerance
  double second_smallest = 0.0;
  double largest = 0.0;
  double upper_bound = 0.0;         // 4k
  double lower_bound_second = 0.0;  // 4k sin^2(pi/2n)
  double upper_margin = 0.0;        // upper_bound - largest
  double lower_margin = 0.0;        // second_smallest - lower_bound_second
  bool pass = false;
};

SpectralBoundsReport spectral_bounds_check(const Spectrum& spec, int k, int n);

}  // namespace mod1
