#include "mod1/angular.hpp"

#include <cmath>
#include <string>

#include "mod1/errors.hpp"

namespace mod1 {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double reduce_mod1(double x) {
  double r = std::fmod(x, 1.0);
  if (r < 0.0) r += 1.0;
  if (r >= 1.0) r = 0.0;  // fmod rounding can land exactly on 1
  return r;
}

RealEmbedding embed(const Mod1Series& s) {
  const int n = s.n();
  RealEmbedding e;
  e.v.resize(2 * n);
  for (int i = 0; i < n; ++i) {
    const double x = s.values[i];
    if (!(x >= 0.0 && x < 1.0))
      throw InvalidArgument("mod-1 value out of [0,1) at index " + std::to_string(i));
    e.v(i) = std::cos(kTwoPi * x);
    e.v(n + i) = std::sin(kTwoPi * x);
  }
  return e;
}

ProjectionResult project_to_mod1(const RealEmbedding& g) {
  const int n = g.n();
  ProjectionResult out;
  out.series.values.resize(n);
  for (int i = 0; i < n; ++i) {
    const double re = g.re(i);
    const double im = g.im(i);
    if (std::hypot(re, im) < 1e-12) {
      out.series.values[i] = 0.0;
      out.degenerate.push_back(i);
      continue;
    }
    out.series.values[i] = reduce_mod1(std::atan2(im, re) / kTwoPi);
  }
  return out;
}

double wrap_distance(double a, double b) {
  if (!(a >= 0.0 && a <= 1.0) || !(b >= 0.0 && b <= 1.0))
    throw InvalidArgument("wrap_distance arguments must lie in [0,1]");
  const double d = std::abs(a - b);
  return std::min(d, 1.0 - d);
}

double projection_wrap_bound(double eps) {
  if (!(eps > 0.0 && eps < 0.5))
    throw InvalidArgument("projection_wrap_bound needs eps in (0, 1/2)");
  return std::asin(eps / (1.0 - eps)) / M_PI;
}

}  // namespace mod1
