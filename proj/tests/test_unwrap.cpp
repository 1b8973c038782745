#include <doctest.h>

#include <Eigen/QR>
#include <cmath>

#include "mod1/errors.hpp"
#include "mod1/metrics.hpp"
#include "mod1/rng.hpp"
#include "mod1/signals.hpp"
#include "mod1/unwrap.hpp"

using namespace mod1;

TEST_CASE("three-way threshold") {
  CHECK(sign_threshold(0.7, 0.5) == -1);
  CHECK(sign_threshold(0.2, 0.5) == 0);
  CHECK(sign_threshold(-0.8, 0.5) == 1);
  CHECK(sign_threshold(0.5, 0.5) == -1);   // boundaries are inclusive
  CHECK(sign_threshold(-0.5, 0.5) == 1);
}

TEST_CASE("quotient tracker") {
  {
    const UnwrapResult r = quotient_tracker(Mod1Series{{0.1, 0.2, 0.3}}, 0.5);
    CHECK(r.quotients == std::vector<int>{0, 0, 0});
    CHECK(r.samples == std::vector<double>{0.1, 0.2, 0.3});
  }
  {
    const UnwrapResult r = quotient_tracker(Mod1Series{{0.8, 0.9, 0.05}}, 0.5);
    CHECK(r.quotients == std::vector<int>{0, 0, 1});
    CHECK(r.samples[2] == doctest::Approx(1.05).epsilon(1e-15));
  }
  CHECK_THROWS_AS(quotient_tracker(Mod1Series{{0.1}}, 0.5), InvalidArgument);
  CHECK_THROWS_AS(quotient_tracker(Mod1Series{{0.1, 0.2}}, 1.0), InvalidArgument);
}

TEST_CASE("quotient tracker recovers clean samples") {
  const SignalSpec& f1 = signal_by_name("f1");
  const SampledInstance inst = sample_clean(f1, UniformGrid::make(500));
  // consecutive clean samples stay within zeta of each other here
  double max_step = 0.0;
  for (int i = 0; i + 1 < 500; ++i)
    max_step = std::max(max_step, std::abs(inst.clean_f[i + 1] - inst.clean_f[i]));
  REQUIRE(max_step < 0.5);
  const UnwrapResult r = quotient_tracker(inst.clean_mod1, 0.5);
  // first true quotient is zero, so the recovery is exact with no shift
  for (int i = 0; i < 500; ++i)
    CHECK(r.samples[i] == doctest::Approx(inst.clean_f[i]).epsilon(1e-12));
}

TEST_CASE("difference system structure") {
  const NeighborGraph g = build_graph(4, 2);
  const Mod1Series y{{0.8, 0.9, 0.05, 0.15}};
  const DifferenceSystem sys = build_difference_system(y, g, 0.5);
  CHECK(sys.edges.size() == 5);
  // edge (2,4) in 1-based indexing: rhs = sign(0.9 - 0.15) + 0.75 = -0.25
  const auto it = std::find(sys.edges.begin(), sys.edges.end(), std::pair{1, 3});
  REQUIRE(it != sys.edges.end());
  CHECK(sys.rhs(static_cast<int>(it - sys.edges.begin())) ==
        doctest::Approx(-0.25).epsilon(1e-15));

  // T annihilates constants
  CHECK(sys.apply(Vector::Ones(4)).cwiseAbs().maxCoeff() == 0.0);

  // non-wrapping series with k=1: rhs is the plain difference
  const NeighborGraph path = build_graph(4, 1);
  const Mod1Series smooth{{0.2, 0.25, 0.3, 0.35}};
  const DifferenceSystem plain = build_difference_system(smooth, path, 0.5);
  for (int e = 0; e < 3; ++e)
    CHECK(plain.rhs(e) == doctest::Approx(smooth.values[e] - smooth.values[e + 1]).epsilon(1e-15));
}

TEST_CASE("normal matrix is the Laplacian and has rank n-1") {
  for (auto [n, k] : {std::pair{5, 1}, {12, 3}, {50, 8}, {7, 6}}) {
    const NeighborGraph g = build_graph(n, k);
    Mod1Series y;
    CounterRng rng(n * 100 + k);
    y.values.resize(n);
    for (auto& v : y.values) v = rng.next_unit();
    const DifferenceSystem sys = build_difference_system(y, g, 0.5);
    const Matrix t = sys.dense();
    CHECK((t.transpose() * t - laplacian(g)).cwiseAbs().maxCoeff() <= 1e-10);
    Eigen::ColPivHouseholderQR<Matrix> qr(t);
    CHECK(qr.rank() == n - 1);
    // apply/apply_transpose agree with the dense matrix
    Vector f(n);
    for (int i = 0; i < n; ++i) f(i) = rng.next_uniform(-2.0, 2.0);
    CHECK((sys.apply(f) - t * f).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((sys.apply_transpose(sys.rhs) - t.transpose() * sys.rhs).cwiseAbs().maxCoeff() <=
          1e-12);
  }
}

TEST_CASE("least-squares unwrap on consistent data") {
  // non-wrapping: solution is the centered series
  const NeighborGraph path = build_graph(6, 1);
  const Mod1Series smooth{{0.2, 0.25, 0.31, 0.38, 0.41, 0.46}};
  const UnwrapResult r = ols_unwrap(smooth, path, 0.5);
  double mean = 0.0;
  for (double v : smooth.values) mean += v;
  mean /= 6.0;
  for (int i = 0; i < 6; ++i)
    CHECK(r.samples[i] == doctest::Approx(smooth.values[i] - mean).epsilon(1e-10));
  CHECK(r.residual <= 1e-10);

  // clean oscillating ramp, k=2: exact up to the optimal shift
  const SignalSpec& f1 = signal_by_name("f1");
  const SampledInstance inst = sample_clean(f1, UniformGrid::make(500));
  const NeighborGraph g2 = build_graph(500, 2);
  const UnwrapResult full = ols_unwrap(inst.clean_mod1, g2, 0.5);
  const ShiftedRmse sr = shifted_rmse(full.samples, inst.clean_f);
  double max_err = 0.0;
  for (int i = 0; i < 500; ++i)
    max_err = std::max(max_err, std::abs(full.samples[i] + sr.shift - inst.clean_f[i]));
  CHECK(max_err <= 1e-8);
}

TEST_CASE("tracker and least-squares agree on consistent line graphs") {
  const SignalSpec& f1 = signal_by_name("f1");
  const SampledInstance inst = sample_clean(f1, UniformGrid::make(120));
  const NeighborGraph path = build_graph(120, 1);
  const UnwrapResult qt = quotient_tracker(inst.clean_mod1, 0.5);
  const UnwrapResult ls = ols_unwrap(inst.clean_mod1, path, 0.5);
  double qt_mean = 0.0;
  for (double v : qt.samples) qt_mean += v;
  qt_mean /= qt.samples.size();
  for (int i = 0; i < 120; ++i)
    CHECK(qt.samples[i] - qt_mean == doctest::Approx(ls.samples[i]).epsilon(1e-8));
}

TEST_CASE("row orientation does not change the solution") {
  const NeighborGraph g = build_graph(9, 2);
  CounterRng rng(9);
  Mod1Series y;
  y.values.resize(9);
  for (auto& v : y.values) v = rng.next_unit();
  const DifferenceSystem sys = build_difference_system(y, g, 0.5);
  const UnwrapResult r = ols_unwrap(y, g, 0.5);

  // flip a subset of rows (and their rhs): the least-squares solution with
  // mean pinned to zero is unchanged
  Matrix t = sys.dense();
  Vector b = sys.rhs;
  for (int e = 0; e < t.rows(); e += 2) {
    t.row(e) = -t.row(e);
    b(e) = -b(e);
  }
  const Vector alt = t.completeOrthogonalDecomposition().solve(b);
  const double alt_mean = alt.mean();
  for (int i = 0; i < 9; ++i)
    CHECK(alt(i) - alt_mean == doctest::Approx(r.samples[i]).epsilon(1e-8));
}

TEST_CASE("integer shifts of the input leave the unwrap unchanged") {
  const SignalSpec& f1 = signal_by_name("f1");
  const UniformGrid grid = UniformGrid::make(64);
  const SampledInstance inst = sample_clean(f1, grid);
  // shifting f by an integer leaves every residue untouched
  std::vector<double> shifted(64);
  for (int i = 0; i < 64; ++i) shifted[i] = inst.clean_f[i] + 3.0;
  Mod1Series shifted_res;
  shifted_res.values.resize(64);
  for (int i = 0; i < 64; ++i) shifted_res.values[i] = reduce_mod1(shifted[i]);
  for (int i = 0; i < 64; ++i)
    CHECK(shifted_res.values[i] == doctest::Approx(inst.clean_mod1.values[i]).epsilon(1e-12));
  const NeighborGraph g = build_graph(64, 2);
  const UnwrapResult a = ols_unwrap(inst.clean_mod1, g, 0.5);
  const UnwrapResult b = ols_unwrap(shifted_res, g, 0.5);
  for (int i = 0; i < 64; ++i)
    CHECK(a.samples[i] == doctest::Approx(b.samples[i]).epsilon(1e-12));
}
