#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mod1/errors.hpp"
#include "mod1/rng.hpp"
#include "mod1/signals.hpp"

using namespace mod1;

TEST_CASE("counter rng is a pure function of (seed, counter)") {
  CounterRng a(12345), b(12345), c(54321);
  for (int i = 0; i < 100; ++i) {
    const double u = a.next_unit();
    CHECK(u == b.next_unit());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  bool all_equal = true;
  CounterRng a2(12345);
  for (int i = 0; i < 10; ++i) all_equal = all_equal && (a2.next_unit() == c.next_unit());
  CHECK_FALSE(all_equal);
  CHECK(CounterRng::derive(1, 2) == CounterRng::derive(1, 2));
  CHECK(CounterRng::derive(1, 2) != CounterRng::derive(1, 3));
}

TEST_CASE("clean sampling decomposes into quotient plus residue") {
  const SignalSpec& zero = signal_by_name("zero");
  const SampledInstance z = sample_clean(zero, UniformGrid::make(10));
  for (int i = 0; i < 10; ++i) {
    CHECK(z.quotients[i] == 0);
    CHECK(z.clean_mod1.values[i] == 0.0);
  }

  const SignalSpec& ramp = signal_by_name("ramp");
  const SampledInstance r = sample_clean(ramp, UniformGrid::make(2));
  CHECK(r.clean_f[1] == 1.5);
  CHECK(r.quotients[1] == 1);
  CHECK(r.clean_mod1.values[1] == 0.5);

  const SignalSpec& f1 = signal_by_name("f1");
  const SampledInstance s = sample_clean(f1, UniformGrid::make(500));
  CHECK(s.clean_f.front() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(s.clean_f.back() == doctest::Approx(4.0).epsilon(1e-12));
  for (int i = 0; i < 500; ++i) {
    const double recon = s.quotients[i] + s.clean_mod1.values[i];
    CHECK(std::abs(s.clean_f[i] - recon) <=
          1e-15 * std::max(1.0, std::abs(s.clean_f[i])));
    CHECK(s.clean_mod1.values[i] >= 0.0);
    CHECK(s.clean_mod1.values[i] < 1.0);
  }

  CHECK_THROWS_AS(signal_by_name("nope"), InvalidArgument);
}

TEST_CASE("smoothness constant certification") {
  const SignalSpec& f1 = signal_by_name("f1");
  CHECK(f1.holder_alpha == 1.0);
  // coarse maximum of |f'| must sit just under the certified constant
  double coarse = 0.0;
  for (int i = 0; i <= 20000; ++i)
    coarse = std::max(coarse, std::abs(f1.derivative(i / 20000.0)));
  CHECK(f1.holder_m >= coarse);
  CHECK(f1.holder_m <= 1.02 * coarse);
  CHECK(signal_by_name("ramp").holder_m == doctest::Approx(1.515).epsilon(1e-12));
}

TEST_CASE("noise models") {
  const SignalSpec& f1 = signal_by_name("f1");
  const SampledInstance base = sample_clean(f1, UniformGrid::make(200));

  // zero-level noise leaves the residues untouched
  const SampledInstance same = add_noise(base, {NoiseModel::uniform, 0.0, 9});
  CHECK(same.noisy_mod1.values == base.clean_mod1.values);

  // repeatable given the seed; bounded drift stays within gamma on the circle
  const SampledInstance u1 = add_noise(base, {NoiseModel::uniform, 0.2, 7});
  const SampledInstance u2 = add_noise(base, {NoiseModel::uniform, 0.2, 7});
  const SampledInstance u3 = add_noise(base, {NoiseModel::uniform, 0.2, 8});
  CHECK(u1.noisy_mod1.values == u2.noisy_mod1.values);
  CHECK(u1.noisy_mod1.values != u3.noisy_mod1.values);
  for (int i = 0; i < 200; ++i)
    CHECK(wrap_distance(u1.noisy_mod1.values[i], base.clean_mod1.values[i]) <= 0.2);

  const SampledInstance g1 = add_noise(base, {NoiseModel::gaussian, 0.1, 3});
  const SampledInstance g2 = add_noise(base, {NoiseModel::gaussian, 0.1, 3});
  CHECK(g1.noisy_mod1.values == g2.noisy_mod1.values);

  const SampledInstance b0 = add_noise(base, {NoiseModel::bernoulli_uniform, 0.0, 5});
  CHECK(b0.noisy_mod1.values == base.clean_mod1.values);

  CHECK_THROWS_WITH_AS(add_noise(base, {NoiseModel::uniform, 0.6, 1}),
                       "gamma out of range [0, 0.5)", InvalidArgument);
  CHECK_THROWS_AS(add_noise(base, {NoiseModel::gaussian, -1.0, 1}), InvalidArgument);
  CHECK_THROWS_AS(add_noise(base, {NoiseModel::bernoulli_uniform, 1.5, 1}), InvalidArgument);
}

TEST_CASE("full replacement is uniform on [0,1)") {
  const SignalSpec& f1 = signal_by_name("f1");
  const int n = 100000;
  const SampledInstance base = sample_clean(f1, UniformGrid::make(n));
  const SampledInstance rep = add_noise(base, {NoiseModel::bernoulli_uniform, 1.0, 99});
  std::vector<double> sorted = rep.noisy_mod1.values;
  std::sort(sorted.begin(), sorted.end());
  double ks = 0.0;
  for (int i = 0; i < n; ++i) {
    const double f_emp_hi = static_cast<double>(i + 1) / n;
    const double f_emp_lo = static_cast<double>(i) / n;
    ks = std::max({ks, std::abs(f_emp_hi - sorted[i]), std::abs(sorted[i] - f_emp_lo)});
  }
  CHECK(ks <= 1.358 / std::sqrt(static_cast<double>(n)));  // 5% critical value
}

TEST_CASE("embedding distance measurements") {
  Mod1Series a{{0.1, 0.4, 0.9}};
  CHECK(measure_delta(a, a) == 0.0);

  Mod1Series b{{0.6, 0.9, 0.4}};  // antipodal offset
  CHECK(measure_delta(a, b) == doctest::Approx(2.0).epsilon(1e-12));

  Mod1Series c{{0.35, 0.65, 0.15}};  // quarter-turn offset
  CHECK(measure_delta(a, c) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  CHECK_THROWS_AS(measure_delta(a, Mod1Series{{0.1}}), InvalidArgument);

  // bounded noise: delta <= 2 pi gamma, and never above 2
  const SignalSpec& f1 = signal_by_name("f1");
  const SampledInstance base = sample_clean(f1, UniformGrid::make(10000));
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const SampledInstance noisy = add_noise(base, {NoiseModel::uniform, 0.15, seed});
    const double d = measure_delta(noisy.noisy_mod1, base.clean_mod1);
    CHECK(d <= 2.0 * M_PI * 0.15);
    CHECK(d <= 2.0);
  }
}
