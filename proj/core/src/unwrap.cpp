#include "mod1/unwrap.hpp"

#include <Eigen/Cholesky>
#include <cmath>

#include "mod1/errors.hpp"

namespace mod1 {

int sign_threshold(double t, double zeta) {
  if (t >= zeta) return -1;
  if (t <= -zeta) return 1;
  return 0;
}

UnwrapResult quotient_tracker(const Mod1Series& r, double zeta) {
  if (r.n() < 2) throw InvalidArgument("quotient tracker needs n >= 2");
  if (!(zeta > 0.0 && zeta < 1.0)) throw InvalidArgument("zeta must lie in (0, 1)");
  UnwrapResult out;
  out.method = UnwrapMethod::quotient_tracker;
  const int n = r.n();
  out.quotients.resize(n);
  out.samples.resize(n);
  out.quotients[0] = 0;
  for (int i = 0; i + 1 < n; ++i)
    out.quotients[i + 1] =
        out.quotients[i] + sign_threshold(r.values[i + 1] - r.values[i], zeta);
  for (int i = 0; i < n; ++i) out.samples[i] = out.quotients[i] + r.values[i];
  return out;
}

Matrix DifferenceSystem::dense() const {
  Matrix t = Matrix::Zero(static_cast<int>(edges.size()), n);
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    t(e, edges[e].first) = 1.0;
    t(e, edges[e].second) = -1.0;
  }
  return t;
}

Vector DifferenceSystem::apply(const Vector& f) const {
  Vector out(static_cast<int>(edges.size()));
  for (int e = 0; e < static_cast<int>(edges.size()); ++e)
    out(e) = f(edges[e].first) - f(edges[e].second);
  return out;
}

Vector DifferenceSystem::apply_transpose(const Vector& b) const {
  Vector out = Vector::Zero(n);
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    out(edges[e].first) += b(e);
    out(edges[e].second) -= b(e);
  }
  return out;
}

DifferenceSystem build_difference_system(const Mod1Series& y, const NeighborGraph& g,
                                         double zeta) {
  if (y.n() != g.n) throw InvalidArgument("series length does not match graph");
  if (!(zeta > 0.0 && zeta < 1.0)) throw InvalidArgument("zeta must lie in (0, 1)");
  DifferenceSystem sys;
  sys.edges = g.edges;
  sys.zeta = zeta;
  sys.n = g.n;
  sys.rhs.resize(static_cast<int>(g.edges.size()));
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    const double d = y.values[g.edges[e].first] - y.values[g.edges[e].second];
    sys.rhs(e) = sign_threshold(d, zeta) + d;
  }
  return sys;
}

UnwrapResult ols_unwrap(const Mod1Series& y, const NeighborGraph& g, double zeta) {
  const DifferenceSystem sys = build_difference_system(y, g, zeta);
  const int n = sys.n;

  // Normal equations: T^T T = L, with the all-ones null direction deflated
  // by a rank-one shift. The shifted matrix is positive definite for a
  // connected graph.
  Matrix lap = laplacian(g);
  lap.array() += 1.0 / n;
  const Vector rhs = sys.apply_transpose(sys.rhs);

  Eigen::LDLT<Matrix> ldlt(lap);
  if (ldlt.info() != Eigen::Success)
    throw NumericalFailure("normal system factorization failed");
  Vector f = ldlt.solve(rhs);
  const double solve_residual = (lap * f - rhs).norm();
  if (!(solve_residual <= 1e-10 * std::max(1.0, rhs.norm()) * n))
    throw NumericalFailure("normal system solve exceeded tolerance");
  f.array() -= f.mean();  // pin the gauge exactly

  UnwrapResult out;
  out.method = UnwrapMethod::least_squares;
  out.samples.assign(f.data(), f.data() + n);
  out.residual = (sys.apply(f) - sys.rhs).norm();
  return out;
}

}  // namespace mod1
