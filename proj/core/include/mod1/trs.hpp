#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "mod1/grid_graph.hpp"

namespace mod1 {

/// Outcome taxonomy for the sphere/ball-constrained quadratic minimizer.
///   easy           multiplier found by root finding, solution unique
///   hard_boundary  linear term orthogonal to the bottom eigenspace and the
///                  boundary is active at the bottom multiplier (ball variant)
///   hard_nullspace multiplier pinned at the bottom eigenvalue, solution
///                  completed along a null-space direction
///   interior       ball variant only: stationary point inside the ball
enum class TrsCase { easy, hard_boundary, hard_nullspace, interior };

std::string to_string(TrsCase c);

/// min g' H g - 2 g' z over ||g||^2 = radius_sq (or <= for the ball variant),
/// H = lambda * diag(L, L). A solution satisfies (2H + mu I) g = 2 z with
/// 2H + mu I PSD; it is unique iff 2H + mu I is positive definite.
struct TrsSolution {
  Vector g;
  double mu = 0.0;
  TrsCase case_tag = TrsCase::easy;
  bool unique = true;
  double kkt_residual = 0.0;         // ||(2H + mu I) g - 2 z||_2
  double constraint_residual = 0.0;  // | ||g||^2 - radius_sq |
  double objective = 0.0;
  /// phi evaluated at the bottom multiplier when the linear term is
  /// orthogonal to the bottom eigenspace; NaN otherwise.
  double phi_at_bottom = std::numeric_limits<double>::quiet_NaN();
};

/// The scalar equation phi(mu) = radius_sq whose root is the multiplier.
/// One pole/coefficient pair per eigen-direction of H: poles are 2*lambda*
/// beta_j duplicated across the two halves, coefficients the projections of
/// z onto the matching eigenvectors. Sum of squared coefficients equals
/// ||z||^2; phi is strictly decreasing right of the largest active pole.
struct SecularFunction {
  Vector poles;  // size 2n: [2*lambda*beta_j | Re half, then Im half]
  Vector coefs;  // <z_half, q_j> in the same order
  double radius_sq = 0.0;

  double phi(double mu) const;
  double phi_prime(double mu) const;
  double coef_norm_sq() const;
};

SecularFunction project_onto_spectrum(const Vector& zbar, const Spectrum& lap_spec,
                                      double lambda, double radius_sq);

/// Sphere-constrained variant (the one the denoiser uses).
TrsSolution solve_trs_equality(const BlockLaplacian& h, const Spectrum& lap_spec,
                               const Vector& zbar, double radius_sq);

/// Ball-constrained variant; returns the interior stationary point when it
/// fits, otherwise the boundary solution with complementary slackness.
TrsSolution solve_trs_inequality(const BlockLaplacian& h, const Spectrum& lap_spec,
                                 const Vector& zbar, double radius_sq);

/// Optimality certificate: stationarity and constraint residuals, PSD margin
/// of 2H + mu I, and the objective compared against random feasible probes.
struct CertificateReport {
  double kkt_residual = 0.0;
  double constraint_residual = 0.0;
  double psd_margin = 0.0;  // mu + 2 * min eigenvalue of H
  double objective = 0.0;
  double best_probe_objective = 0.0;
  int probes = 0;
  bool pass = false;
};

CertificateReport certify(const TrsSolution& sol, const BlockLaplacian& h,
                          const Spectrum& lap_spec, const Vector& zbar,
                          double radius_sq, std::uint64_t seed, int probes = 1000);

}  // namespace mod1
