#include "mod1/trs.hpp"

#include <cmath>
#include <string>

#include "mod1/errors.hpp"
#include "mod1/rng.hpp"

namespace mod1 {

namespace {

// Coefficients at or below this fraction of ||z|| count as orthogonal to the
// bottom eigenspace; below it the secular root is numerically
// indistinguishable from the bottom multiplier.
constexpr double kOrthTol = 1e-9;

struct BottomSplit {
  double p_min = 0.0;
  double group_tol = 0.0;
  double bottom_norm_sq = 0.0;
  int first_bottom = -1;  // deterministic completion direction
  bool orthogonal = false;
};

BottomSplit split_bottom(const SecularFunction& sec) {
  BottomSplit s;
  s.p_min = sec.poles.minCoeff();
  const double scale = std::max({1.0, std::abs(s.p_min), std::abs(sec.poles.maxCoeff())});
  s.group_tol = 1e-12 * scale;
  if (std::abs(s.p_min) <= s.group_tol) s.p_min = 0.0;  // eigensolver noise
  for (int i = 0; i < sec.poles.size(); ++i) {
    if (sec.poles(i) <= s.p_min + s.group_tol) {
      s.bottom_norm_sq += sec.coefs(i) * sec.coefs(i);
      if (s.first_bottom < 0) s.first_bottom = i;
    }
  }
  s.orthogonal = std::sqrt(s.bottom_norm_sq) <= kOrthTol * std::sqrt(sec.coef_norm_sq());
  return s;
}

// Copy with the bottom-group coefficients zeroed, so phi stays finite at the
// bottom multiplier.
SecularFunction drop_bottom(const SecularFunction& sec, const BottomSplit& s) {
  SecularFunction out = sec;
  for (int i = 0; i < out.poles.size(); ++i)
    if (out.poles(i) <= s.p_min + s.group_tol) out.coefs(i) = 0.0;
  return out;
}

// g(mu) = sum_j 2 c_j / (p_j + mu) q_j, assembled blockwise. Exact zeros in
// the coefficients are skipped so pinned multipliers do not divide 0 by 0.
Vector assemble(const Spectrum& lap_spec, const SecularFunction& sec, double mu) {
  const int n = lap_spec.size();
  Vector w_re = Vector::Zero(n), w_im = Vector::Zero(n);
  for (int j = 0; j < n; ++j) {
    const double den = sec.poles(j) + mu;
    if (sec.coefs(j) != 0.0) w_re(j) = 2.0 * sec.coefs(j) / den;
    if (sec.coefs(n + j) != 0.0) w_im(j) = 2.0 * sec.coefs(n + j) / den;
  }
  Vector g(2 * n);
  g.head(n) = lap_spec.eigenvectors * w_re;
  g.tail(n) = lap_spec.eigenvectors * w_im;
  return g;
}

// Unit eigenvector of H for flat index t: (q_j; 0) for t < n, (0; q_j) after.
Vector basis_direction(const Spectrum& lap_spec, int t) {
  const int n = lap_spec.size();
  Vector v = Vector::Zero(2 * n);
  if (t < n)
    v.head(n) = lap_spec.eigenvectors.col(t);
  else
    v.tail(n) = lap_spec.eigenvectors.col(t - n);
  return v;
}

// Safeguarded root of phi(mu) = radius_sq on (lo, hi]: bisection bracket with
// Newton steps on 1/sqrt(phi) - 1/r, which is near-linear in mu.
double solve_secular(const SecularFunction& sec, double lo) {
  const double r2 = sec.radius_sq;
  const double r = std::sqrt(r2);
  double hi = lo + 2.0 * std::sqrt(sec.coef_norm_sq()) / r * (1.0 + 1e-6);
  const double phi_lo = sec.phi(lo);  // +inf at an active pole
  const double phi_hi = sec.phi(hi);
  if (!(phi_lo >= r2) || !(phi_hi <= r2))
    throw NumericalFailure("secular equation root not bracketed");

  double mu = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double val = sec.phi(mu);
    if (std::abs(val - r2) <= 1e-10 * r2) return mu;
    if (val > r2)
      lo = mu;
    else
      hi = mu;
    if (hi - lo <= 1e-14 * (1.0 + std::abs(mu))) return 0.5 * (lo + hi);
    double next = 0.5 * (lo + hi);
    if (std::isfinite(val) && val > 0.0) {
      const double dphi = sec.phi_prime(mu);
      const double psi = 1.0 / std::sqrt(val) - 1.0 / r;
      const double dpsi = -0.5 * dphi / (val * std::sqrt(val));
      if (dpsi > 0.0) {
        const double cand = mu - psi / dpsi;
        if (cand > lo && cand < hi) next = cand;
      }
    }
    mu = next;
  }
  return mu;
}

void finalize(TrsSolution& sol, const BlockLaplacian& h, const Vector& zbar, double radius_sq) {
  const Vector res = 2.0 * h.apply(sol.g) + sol.mu * sol.g - 2.0 * zbar;
  sol.kkt_residual = res.norm();
  sol.constraint_residual = std::abs(sol.g.squaredNorm() - radius_sq);
  sol.objective = h.quad(sol.g) - 2.0 * sol.g.dot(zbar);
}

void validate(const BlockLaplacian& h, const Spectrum& lap_spec, const Vector& zbar,
              double radius_sq) {
  if (h.lambda < 0.0) throw InvalidArgument("regularization weight must be >= 0");
  if (radius_sq <= 0.0) throw InvalidArgument("radius^2 must be positive");
  if (lap_spec.size() != h.n())
    throw NumericalFailure("spectrum size does not match Laplacian");
  if (zbar.size() != 2 * h.n())
    throw InvalidArgument("linear term must have dimension 2n = " +
                          std::to_string(2 * h.n()));
}

}  // namespace

std::string to_string(TrsCase c) {
  switch (c) {
    case TrsCase::easy: return "easy";
    case TrsCase::hard_boundary: return "hard-boundary";
    case TrsCase::hard_nullspace: return "hard-nullspace";
    case TrsCase::interior: return "interior";
  }
  return "unknown";
}

double SecularFunction::phi(double mu) const {
  double s = 0.0;
  for (int i = 0; i < poles.size(); ++i) {
    const double c = coefs(i);
    if (c == 0.0) continue;
    const double d = poles(i) + mu;
    s += (c * c) / (d * d);
  }
  return 4.0 * s;
}

double SecularFunction::phi_prime(double mu) const {
  double s = 0.0;
  for (int i = 0; i < poles.size(); ++i) {
    const double c = coefs(i);
    if (c == 0.0) continue;
    const double d = poles(i) + mu;
    s += (c * c) / (d * d * d);
  }
  return -8.0 * s;
}

double SecularFunction::coef_norm_sq() const { return coefs.squaredNorm(); }

SecularFunction project_onto_spectrum(const Vector& zbar, const Spectrum& lap_spec,
                                      double lambda, double radius_sq) {
  const int n = lap_spec.size();
  if (zbar.size() != 2 * n)
    throw InvalidArgument("project_onto_spectrum: embedding has dimension " +
                          std::to_string(zbar.size()) + ", expected " + std::to_string(2 * n));
  SecularFunction sec;
  sec.poles.resize(2 * n);
  sec.coefs.resize(2 * n);
  sec.radius_sq = radius_sq;
  const Vector c_re = lap_spec.eigenvectors.transpose() * zbar.head(n);
  const Vector c_im = lap_spec.eigenvectors.transpose() * zbar.tail(n);
  for (int j = 0; j < n; ++j) {
    const double pole = 2.0 * lambda * lap_spec.eigenvalues(j);
    sec.poles(j) = pole;
    sec.poles(n + j) = pole;
    sec.coefs(j) = c_re(j);
    sec.coefs(n + j) = c_im(j);
  }
  return sec;
}

TrsSolution solve_trs_equality(const BlockLaplacian& h, const Spectrum& lap_spec,
                               const Vector& zbar, double radius_sq) {
  validate(h, lap_spec, zbar, radius_sq);
  const SecularFunction sec = project_onto_spectrum(zbar, lap_spec, h.lambda, radius_sq);
  const BottomSplit split = split_bottom(sec);

  TrsSolution sol;
  if (!split.orthogonal) {
    sol.mu = solve_secular(sec, -split.p_min);
    sol.g = assemble(lap_spec, sec, sol.mu);
    sol.case_tag = TrsCase::easy;
    sol.unique = true;
  } else {
    const SecularFunction clean = drop_bottom(sec, split);
    const double phi0 = clean.phi(-split.p_min);
    sol.phi_at_bottom = phi0;
    if (phi0 > radius_sq) {
      sol.mu = solve_secular(clean, -split.p_min);
      sol.g = assemble(lap_spec, clean, sol.mu);
      sol.case_tag = TrsCase::easy;
      sol.unique = true;
    } else {
      sol.mu = -split.p_min;
      sol.g = assemble(lap_spec, clean, sol.mu);
      const double theta_sq = radius_sq - phi0;
      const double theta = std::sqrt(std::max(0.0, theta_sq));
      sol.g += theta * basis_direction(lap_spec, split.first_bottom);
      sol.case_tag = TrsCase::hard_nullspace;
      sol.unique = theta_sq <= 1e-10 * radius_sq;
    }
  }
  finalize(sol, h, zbar, radius_sq);
  return sol;
}

TrsSolution solve_trs_inequality(const BlockLaplacian& h, const Spectrum& lap_spec,
                                 const Vector& zbar, double radius_sq) {
  validate(h, lap_spec, zbar, radius_sq);
  const SecularFunction sec = project_onto_spectrum(zbar, lap_spec, h.lambda, radius_sq);

  // A stationary point of the unconstrained objective exists iff the
  // operator is PSD and z carries no mass on its zero eigenspace.
  const double p_max = std::max(1.0, sec.poles.cwiseAbs().maxCoeff());
  const double zero_tol = 1e-12 * p_max;
  const double p_min = sec.poles.minCoeff();
  if (p_min >= -zero_tol) {
    double zero_mass_sq = 0.0;
    SecularFunction clean = sec;
    for (int i = 0; i < sec.poles.size(); ++i) {
      if (std::abs(sec.poles(i)) <= zero_tol) {
        zero_mass_sq += sec.coefs(i) * sec.coefs(i);
        clean.coefs(i) = 0.0;
      }
    }
    const bool singular = p_min <= zero_tol;  // operator has a ~0 eigenvalue
    const bool stationary =
        std::sqrt(zero_mass_sq) <= kOrthTol * std::sqrt(sec.coef_norm_sq());
    if (stationary) {
      const double phi0 = clean.phi(0.0);
      if (phi0 <= radius_sq) {
        TrsSolution sol;
        sol.mu = 0.0;
        sol.g = assemble(lap_spec, clean, 0.0);
        sol.phi_at_bottom = phi0;
        if (std::abs(phi0 - radius_sq) <= 1e-10 * radius_sq) {
          sol.case_tag = TrsCase::hard_boundary;
          sol.unique = true;
        } else {
          sol.case_tag = TrsCase::interior;
          sol.unique = !singular;  // a singular PSD operator admits a family
        }
        finalize(sol, h, zbar, radius_sq);
        return sol;
      }
    }
  }
  // Ball constraint active: the sphere solution applies, mu >= 0 by PSD-ness.
  return solve_trs_equality(h, lap_spec, zbar, radius_sq);
}

CertificateReport certify(const TrsSolution& sol, const BlockLaplacian& h,
                          const Spectrum& lap_spec, const Vector& zbar,
                          double radius_sq, std::uint64_t seed, int probes) {
  CertificateReport rep;
  const Vector res = 2.0 * h.apply(sol.g) + sol.mu * sol.g - 2.0 * zbar;
  rep.kkt_residual = res.norm();
  rep.constraint_residual = std::abs(sol.g.squaredNorm() - radius_sq);
  rep.psd_margin = sol.mu + 2.0 * h.lambda * lap_spec.eigenvalues(0);
  rep.objective = h.quad(sol.g) - 2.0 * sol.g.dot(zbar);
  rep.probes = probes;

  CounterRng rng(seed);
  const int dim = static_cast<int>(sol.g.size());
  double best = std::numeric_limits<double>::infinity();
  Vector probe(dim);
  for (int p = 0; p < probes; ++p) {
    for (int i = 0; i < dim; ++i) probe(i) = rng.next_gaussian(1.0);
    const double nrm = probe.norm();
    if (nrm == 0.0) continue;
    probe *= std::sqrt(radius_sq) / nrm;
    best = std::min(best, h.quad(probe) - 2.0 * probe.dot(zbar));
  }
  rep.best_probe_objective = best;

  const double obj_tol = 1e-9 * std::max({1.0, std::abs(rep.objective), std::abs(best)});
  rep.pass = rep.kkt_residual <= 1e-8 * (1.0 + zbar.norm()) &&
             rep.constraint_residual <= 1e-8 * radius_sq &&
             rep.psd_margin >= -1e-10 && rep.objective <= best + obj_tol;
  return rep;
}

}  // namespace mod1
