#include "mod1/grid_graph.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "mod1/errors.hpp"

namespace mod1 {

UniformGrid UniformGrid::make(int n) {
  if (n < 2) throw InvalidArgument("grid needs n >= 2, got " + std::to_string(n));
  UniformGrid g;
  g.n = n;
  g.points.resize(n);
  for (int i = 0; i < n; ++i) g.points[i] = static_cast<double>(i) / (n - 1);
  return g;
}

NeighborGraph build_graph(int n, int k) {
  if (n < 2) throw InvalidArgument("graph needs n >= 2, got " + std::to_string(n));
  if (k < 1 || k > n - 1)
    throw InvalidArgument("neighborhood radius k must be in [1, n-1], got k=" +
                          std::to_string(k) + " for n=" + std::to_string(n));
  NeighborGraph g;
  g.n = n;
  g.k = k;
  g.degrees.assign(n, 0);
  g.edges.reserve(static_cast<std::size_t>(n) * k);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n && j - i <= k; ++j) {
      g.edges.emplace_back(i, j);
      ++g.degrees[i];
      ++g.degrees[j];
    }
  }
  return g;
}

Matrix laplacian(const NeighborGraph& g) {
  Matrix lap = Matrix::Zero(g.n, g.n);
  for (auto [i, j] : g.edges) {
    lap(i, j) = -1.0;
    lap(j, i) = -1.0;
  }
  for (int i = 0; i < g.n; ++i) lap(i, i) = g.degrees[i];
  return lap;
}

Spectrum spectrum(const Matrix& sym) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw NumericalFailure("symmetric eigendecomposition did not converge");
  Spectrum s;
  s.eigenvalues = solver.eigenvalues();
  s.eigenvectors = solver.eigenvectors();
  // Sign convention: first entry with magnitude above 1e-12 is positive.
  for (int j = 0; j < s.eigenvectors.cols(); ++j) {
    for (int i = 0; i < s.eigenvectors.rows(); ++i) {
      double v = s.eigenvectors(i, j);
      if (std::abs(v) > 1e-12) {
        if (v < 0.0) s.eigenvectors.col(j) = -s.eigenvectors.col(j);
        break;
      }
    }
  }
  return s;
}

Vector BlockLaplacian::apply(const Vector& v) const {
  const int m = n();
  Vector out(2 * m);
  out.head(m) = lambda * (lap * v.head(m));
  out.tail(m) = lambda * (lap * v.tail(m));
  return out;
}

double BlockLaplacian::quad(const Vector& v) const {
  const int m = n();
  return lambda * (v.head(m).dot(lap * v.head(m)) + v.tail(m).dot(lap * v.tail(m)));
}

SpectralBoundsReport spectral_bounds_check(const Spectrum& spec, int k, int n) {
  SpectralBoundsReport r;
  r.smallest = spec.eigenvalues(0);
  r.second_smallest = spec.eigenvalues(1);
  r.largest = spec.eigenvalues(spec.size() - 1);
  r.upper_bound = 4.0 * k;
  const double s = std::sin(M_PI / (2.0 * n));
  r.lower_bound_second = 4.0 * k * s * s;
  r.upper_margin = r.upper_bound - r.largest;
  r.lower_margin = r.second_smallest - r.lower_bound_second;
  const double tol = 1e-10 * std::max(1.0, r.largest);
  r.pass = r.upper_margin >= -tol && r.lower_margin >= -tol && std::abs(r.smallest) <= tol;
  return r;
}

}  // namespace mod1
