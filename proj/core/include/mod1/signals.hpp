#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mod1/angular.hpp"
#include "mod1/grid_graph.hpp"

namespace mod1 {

/// A test signal together with a numerically certified smoothness constant:
/// |f(x) - f(y)| <= holder_m * |x - y|^holder_alpha on [0,1].
struct SignalSpec {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> derivative;  // analytic, used for certification
  double holder_m = 0.0;
  double holder_alpha = 1.0;
};

/// Registry of built-in signals: "f1" (the oscillating ramp
/// 4x cos^2(2 pi x) - 2 sin^2(2 pi x)), "ramp" (1.5 x), "constant" (0.4),
/// "zero". Constants are certified on first use: max |f'| over a 1e6-point
/// grid, inflated by 1%.
const SignalSpec& signal_by_name(const std::string& name);
std::vector<std::string> signal_names();

/// max |f'| over a dense grid, inflated by 1%.
double certify_holder_m(const std::function<double(double)>& derivative,
                        int grid_points = 1000001);

enum class NoiseModel { uniform, gaussian, bernoulli_uniform };

std::string to_string(NoiseModel m);
NoiseModel noise_model_from_string(const std::string& s);

/// uniform: additive noise on [-param, param], param in [0, 0.5);
/// gaussian: additive N(0, param^2), param >= 0;
/// bernoulli_uniform: residue replaced by U[0,1) with probability param.
struct NoiseSpec {
  NoiseModel model = NoiseModel::uniform;
  double param = 0.0;
  std::uint64_t seed = 0;
};

struct SampledInstance {
  UniformGrid grid;
  std::vector<double> clean_f;  // f(x_i)
  std::vector<int> quotients;   // floor(f(x_i))
  Mod1Series clean_mod1;        // f(x_i) - floor(f(x_i))
  Mod1Series noisy_mod1;        // equals clean_mod1 until noise is added
};

SampledInstance sample_clean(const SignalSpec& s, const UniformGrid& grid);

/// Returns a copy with noisy_mod1 regenerated; fully determined by
/// (noise.model, noise.param, noise.seed, n).
SampledInstance add_noise(const SampledInstance& inst, const NoiseSpec& noise);

/// ||embed(y) - embed(clean)||_2 / sqrt(n); at most 2.
double measure_delta(const Mod1Series& y, const Mod1Series& clean);

}  // namespace mod1
