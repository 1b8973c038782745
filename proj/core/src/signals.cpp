#include "mod1/signals.hpp"

#include <cmath>
#include <map>

#include "mod1/errors.hpp"
#include "mod1/rng.hpp"

namespace mod1 {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

double f1(double x) {
  const double c = std::cos(kTwoPi * x);
  const double s = std::sin(kTwoPi * x);
  return 4.0 * x * c * c - 2.0 * s * s;
}

double f1_derivative(double x) {
  const double c = std::cos(kTwoPi * x);
  const double s4 = std::sin(2.0 * kTwoPi * x);
  return 4.0 * c * c - 4.0 * M_PI * x * s4 - 2.0 * M_PI * s4;
}

SignalSpec make_certified(std::string name, std::function<double(double)> f,
                          std::function<double(double)> df) {
  SignalSpec s;
  s.name = std::move(name);
  s.f = std::move(f);
  s.derivative = std::move(df);
  s.holder_alpha = 1.0;
  s.holder_m = certify_holder_m(s.derivative);
  return s;
}
}  // namespace

double certify_holder_m(const std::function<double(double)>& derivative, int grid_points) {
  double m = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double x = static_cast<double>(i) / (grid_points - 1);
    m = std::max(m, std::abs(derivative(x)));
  }
  return 1.01 * m;
}

const SignalSpec& signal_by_name(const std::string& name) {
  static const std::map<std::string, SignalSpec> registry = [] {
    std::map<std::string, SignalSpec> r;
    r.emplace("f1", make_certified("f1", f1, f1_derivative));
    r.emplace("ramp", make_certified(
                          "ramp", [](double x) { return 1.5 * x; },
                          [](double) { return 1.5; }));
    r.emplace("constant", make_certified(
                              "constant", [](double) { return 0.4; },
                              [](double) { return 0.0; }));
    r.emplace("zero", make_certified(
                          "zero", [](double) { return 0.0; },
                          [](double) { return 0.0; }));
    return r;
  }();
  auto it = registry.find(name);
  if (it == registry.end()) throw InvalidArgument("unknown signal: " + name);
  return it->second;
}

std::vector<std::string> signal_names() { return {"f1", "ramp", "constant", "zero"}; }

std::string to_string(NoiseModel m) {
  switch (m) {
    case NoiseModel::uniform: return "uniform";
    case NoiseModel::gaussian: return "gaussian";
    case NoiseModel::bernoulli_uniform: return "bernoulli-uniform";
  }
  return "unknown";
}

NoiseModel noise_model_from_string(const std::string& s) {
  if (s == "uniform") return NoiseModel::uniform;
  if (s == "gaussian") return NoiseModel::gaussian;
  if (s == "bernoulli-uniform" || s == "bernoulli_uniform") return NoiseModel::bernoulli_uniform;
  throw InvalidArgument("unknown noise model: " + s);
}

SampledInstance sample_clean(const SignalSpec& s, const UniformGrid& grid) {
  SampledInstance inst;
  inst.grid = grid;
  inst.clean_f.resize(grid.n);
  inst.quotients.resize(grid.n);
  inst.clean_mod1.values.resize(grid.n);
  for (int i = 0; i < grid.n; ++i) {
    const double fi = s.f(grid.points[i]);
    const double q = std::floor(fi);
    inst.clean_f[i] = fi;
    inst.quotients[i] = static_cast<int>(q);
    inst.clean_mod1.values[i] = fi - q;
  }
  inst.noisy_mod1 = inst.clean_mod1;
  return inst;
}

SampledInstance add_noise(const SampledInstance& inst, const NoiseSpec& noise) {
  switch (noise.model) {
    case NoiseModel::uniform:
      if (!(noise.param >= 0.0 && noise.param < 0.5))
        throw InvalidArgument("gamma out of range [0, 0.5)");
      break;
    case NoiseModel::gaussian:
      if (!(noise.param >= 0.0)) throw InvalidArgument("sigma out of range [0, inf)");
      break;
    case NoiseModel::bernoulli_uniform:
      if (!(noise.param >= 0.0 && noise.param <= 1.0))
        throw InvalidArgument("p out of range [0, 1]");
      break;
  }
  SampledInstance out = inst;
  CounterRng rng(noise.seed);
  const int n = inst.grid.n;
  for (int i = 0; i < n; ++i) {
    switch (noise.model) {
      case NoiseModel::uniform:
        out.noisy_mod1.values[i] =
            reduce_mod1(inst.clean_f[i] + rng.next_uniform(-noise.param, noise.param));
        break;
      case NoiseModel::gaussian:
        out.noisy_mod1.values[i] =
            reduce_mod1(inst.clean_f[i] + rng.next_gaussian(noise.param));
        break;
      case NoiseModel::bernoulli_uniform: {
        const double coin = rng.next_unit();
        const double repl = rng.next_unit();
        out.noisy_mod1.values[i] = coin < noise.param ? repl : inst.clean_mod1.values[i];
        break;
      }
    }
  }
  return out;
}

double measure_delta(const Mod1Series& y, const Mod1Series& clean) {
  if (y.n() != clean.n()) throw InvalidArgument("measure_delta: length mismatch");
  const RealEmbedding a = embed(y);
  const RealEmbedding b = embed(clean);
  return (a.v - b.v).norm() / std::sqrt(static_cast<double>(y.n()));
}

}  // namespace mod1
