#pragma once

// Brute-force reference for the sphere-constrained quadratic minimizer,
// deliberately independent of the production solver: it materializes the
// full 2n x 2n operator from the band-graph definition, eigendecomposes it,
// scans a dense multiplier grid for a sign change of phi - r^2, and refines
// by plain bisection. Test code only.

#include <cstdint>

#include "mod1/grid_graph.hpp"

namespace mod1::oracle {

struct OracleSolution {
  Vector g;
  double mu = 0.0;
  double objective = 0.0;
  bool completion = false;  // null-space completion was needed
};

// Dense H = lambda * diag(L, L) with L assembled directly from |i-j| <= k.
Matrix dense_block_operator(int n, int k, double lambda);

// Reference solve of min g'Hg - 2g'z over ||g||^2 = radius_sq.
OracleSolution solve_sphere_reference(const Matrix& h_dense, const Vector& zbar,
                                      double radius_sq, int grid_points = 1000000);

// Smallest objective over random points on the sphere.
double random_feasible_minimum(const Matrix& h_dense, const Vector& zbar,
                               double radius_sq, int count, std::uint64_t seed);

}  // namespace mod1::oracle
