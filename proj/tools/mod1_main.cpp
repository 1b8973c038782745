// Command-line front end: single denoise runs, parameter sweeps, and the
// bound-check battery. Exit codes: 0 ok, 1 runtime failure, 2 usage/config
// error, 3 bound violation.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mod1/denoise.hpp"
#include "mod1/errors.hpp"
#include "mod1/experiment.hpp"
#include "mod1/metrics.hpp"
#include "mod1/signals.hpp"
#include "mod1/unwrap.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;
namespace fs = std::filesystem;

struct DenoiseArgs {
  int n = 500;
  int k = 2;
  double lambda = 0.1;
  std::string noise = "uniform";
  double param = 0.15;
  std::uint64_t seed = 1;
  std::string method = "qcqp";
  int iterations = 10;
  double zeta = 0.5;
  std::string function = "f1";
  std::string out = ".";
};

struct UnwrapArgs {
  std::string in;
  std::string method = "ols";
  int k = 1;
  double zeta = 0.5;
  std::string out = ".";
};

std::ofstream open_out(const fs::path& p) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw mod1::NumericalFailure("cannot write " + p.string());
  return os;
}

int cmd_denoise(const DenoiseArgs& a) {
  using namespace mod1;
  if (a.method != "qcqp" && a.method != "iqcqp" && a.method != "ols")
    throw InvalidArgument("method must be one of ols, qcqp, iqcqp");
  const auto t0 = std::chrono::steady_clock::now();

  const SignalSpec& signal = signal_by_name(a.function);
  const UniformGrid grid = UniformGrid::make(a.n);
  const NoiseSpec noise{noise_model_from_string(a.noise), a.param, a.seed};
  const SampledInstance inst = add_noise(sample_clean(signal, grid), noise);

  Denoiser ctx(a.n, a.k);
  Mod1Series denoised = inst.noisy_mod1;
  json metrics;
  if (a.method != "ols") {
    const int iters = a.method == "qcqp" ? 1 : a.iterations;
    const DenoiseResult d =
        ctx.iterated_denoise(inst.noisy_mod1, a.lambda, iters, &inst.clean_mod1);
    denoised = d.denoised;
    metrics["correlation"] = *d.correlation;
    metrics["mu"] = d.trs.mu;
    metrics["case"] = to_string(d.trs.case_tag);
    metrics["degenerateCount"] = d.degenerate_indices.size();
    metrics["wrapRmseTrace"] = d.wrap_rmse_trace;
  }
  const UnwrapResult u = ols_unwrap(denoised, ctx.graph(), a.zeta);
  const MetricsReport rep = evaluate_recovery(inst, denoised, u.samples);

  metrics["function"] = a.function;
  metrics["n"] = a.n;
  metrics["k"] = a.k;
  metrics["lambda"] = a.lambda;
  metrics["noise"] = a.noise;
  metrics["param"] = a.param;
  metrics["seed"] = a.seed;
  metrics["method"] = a.method;
  metrics["iterations"] = a.method == "iqcqp" ? a.iterations : (a.method == "qcqp" ? 1 : 0);
  metrics["zeta"] = a.zeta;
  metrics["wrapRmseMod1"] = rep.wrap_rmse_mod1;
  metrics["plainRmseMod1"] = rep.plain_rmse_mod1;
  metrics["wrapRmseNoisy"] = wrap_rmse(inst.noisy_mod1, inst.clean_mod1);
  metrics["shiftedRmseF"] = rep.shifted_rmse_f;
  metrics["shiftedRmseFIntShift"] = rep.shifted_rmse_f_int;
  metrics["optimalShift"] = rep.optimal_shift;
  metrics["embeddingCorrelation"] = rep.correlation;
  metrics["holderM"] = signal.holder_m;
  metrics["holderAlpha"] = signal.holder_alpha;
  metrics["lsResidual"] = u.residual;
  metrics["noisyDelta"] = measure_delta(inst.noisy_mod1, inst.clean_mod1);
  metrics["wallMs"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  fs::create_directories(a.out);
  {
    auto os = open_out(fs::path(a.out) / "series.csv");
    os << "i,x,clean_f,clean_mod1,noisy_mod1,denoised_mod1,unwrapped_f\n";
    for (int i = 0; i < a.n; ++i) {
      using mod1::experiment::csv_double;
      os << i << ',' << csv_double(grid.points[i]) << ',' << csv_double(inst.clean_f[i])
         << ',' << csv_double(inst.clean_mod1.values[i]) << ','
         << csv_double(inst.noisy_mod1.values[i]) << ',' << csv_double(denoised.values[i])
         << ',' << csv_double(u.samples[i]) << '\n';
    }
  }
  {
    auto os = open_out(fs::path(a.out) / "metrics.json");
    os << metrics.dump(2) << "\n";
  }
  return 0;
}

int cmd_unwrap(const UnwrapArgs& a) {
  using namespace mod1;
  if (a.method != "qt" && a.method != "ols")
    throw InvalidArgument("method must be qt or ols");
  std::ifstream in(a.in);
  if (!in) throw InvalidArgument("cannot open input series: " + a.in);
  Mod1Series series;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    series.values.push_back(std::stod(line));
  }
  if (series.n() < 2) throw InvalidArgument("input series needs at least 2 values");
  for (double v : series.values)
    if (!(v >= 0.0 && v < 1.0)) throw InvalidArgument("input values must lie in [0,1)");

  UnwrapResult res;
  if (a.method == "qt") {
    res = quotient_tracker(series, a.zeta);
  } else {
    const NeighborGraph g = build_graph(series.n(), a.k);
    res = ols_unwrap(series, g, a.zeta);
  }

  fs::create_directories(a.out);
  {
    auto os = open_out(fs::path(a.out) / "unwrapped.csv");
    os << (a.method == "qt" ? "i,residue,sample,quotient\n" : "i,residue,sample\n");
    for (int i = 0; i < series.n(); ++i) {
      using mod1::experiment::csv_double;
      os << i << ',' << csv_double(series.values[i]) << ',' << csv_double(res.samples[i]);
      if (a.method == "qt") os << ',' << res.quotients[i];
      os << '\n';
    }
  }
  {
    json metrics;
    metrics["method"] = a.method;
    metrics["n"] = series.n();
    metrics["zeta"] = a.zeta;
    if (a.method == "ols") {
      metrics["k"] = a.k;
      metrics["lsResidual"] = res.residual;
    }
    auto os = open_out(fs::path(a.out) / "metrics.json");
    os << metrics.dump(2) << "\n";
  }
  return 0;
}

int cmd_sweep(const std::string& config_path) {
  using namespace mod1::experiment;
  const Config cfg = load_config(config_path);
  const SweepResult res = run_sweep(cfg);
  for (const auto& path : write_sweep_outputs(cfg, res)) std::cout << path << "\n";
  return 0;
}

int cmd_check_bounds(const std::string& config_path, bool tamper) {
  using namespace mod1::experiment;
  Config cfg = load_config(config_path);
  if (tamper) cfg.tamper = true;
  const BoundBattery battery = run_bound_battery(cfg);

  fs::create_directories(cfg.output_dir);
  {
    auto os = open_out(fs::path(cfg.output_dir) / "bounds.csv");
    write_bound_csv(battery, os);
  }
  int hyp_skipped = 0;
  for (const auto& r : battery.rows)
    for (const auto& c : r.checks)
      if (!c.hypotheses_met) ++hyp_skipped;
  std::cout << "trials: " << battery.rows.size() << "\n"
            << "violations: " << battery.violations << "\n"
            << "hypothesis-gated checks: " << hyp_skipped << "\n";
  return battery.violations > 0 ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"denoise and unwrap modulo-1 samples of a smooth function"};
  app.require_subcommand(1);

  DenoiseArgs da;
  auto* denoise = app.add_subcommand("denoise", "denoise one noisy instance and unwrap it");
  denoise->add_option("--n", da.n, "number of samples");
  denoise->add_option("--k", da.k, "neighborhood radius");
  denoise->add_option("--lambda", da.lambda, "regularization weight");
  denoise->add_option("--noise", da.noise, "uniform | gaussian | bernoulli-uniform");
  denoise->add_option("--param", da.param, "noise level (gamma, sigma or p)");
  denoise->add_option("--seed", da.seed, "random seed");
  denoise->add_option("--method", da.method, "ols | qcqp | iqcqp");
  denoise->add_option("--iterations", da.iterations, "iqcqp passes");
  denoise->add_option("--zeta", da.zeta, "unwrap threshold in (0,1)");
  denoise->add_option("--function", da.function, "signal name");
  denoise->add_option("--out", da.out, "output directory");

  UnwrapArgs ua;
  auto* unwrap = app.add_subcommand("unwrap", "unwrap residues from a file (one per line)");
  unwrap->add_option("--in", ua.in, "input file")->required();
  unwrap->add_option("--method", ua.method, "qt | ols");
  unwrap->add_option("--k", ua.k, "neighborhood radius (ols)");
  unwrap->add_option("--zeta", ua.zeta, "threshold in (0,1)");
  unwrap->add_option("--out", ua.out, "output directory");

  std::string sweep_config;
  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep from a JSON config");
  sweep->add_option("--config", sweep_config, "config JSON path")->required();

  std::string bounds_config;
  bool tamper = false;
  auto* check = app.add_subcommand("check-bounds", "run the bound-check battery");
  check->add_option("--config", bounds_config, "config JSON path")->required();
  check->add_flag("--tamper", tamper, "corrupt the solver output (self-test)");

  auto* version = app.add_subcommand("version", "print version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the parse error
    return code == 0 ? 0 : 2;
  }

  try {
    if (version->parsed()) {
      std::cout << "mod1 " << kVersion << "\n";
      return 0;
    }
    if (denoise->parsed()) return cmd_denoise(da);
    if (unwrap->parsed()) return cmd_unwrap(ua);
    if (sweep->parsed()) return cmd_sweep(sweep_config);
    if (check->parsed()) return cmd_check_bounds(bounds_config, tamper);
  } catch (const mod1::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mod1::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
