#include "mod1/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mod1/errors.hpp"
#include "mod1/rng.hpp"
#include "mod1/svg.hpp"
#include "mod1/unwrap.hpp"

namespace mod1::experiment {

namespace {

using nlohmann::json;

std::vector<double> as_double_list(const json& v, const char* key) {
  std::vector<double> out;
  if (v.is_number()) {
    out.push_back(v.get<double>());
  } else if (v.is_array()) {
    for (const auto& e : v) out.push_back(e.get<double>());
  } else {
    throw InvalidArgument(std::string("config field '") + key + "' must be number or array");
  }
  if (out.empty()) throw InvalidArgument(std::string("config field '") + key + "' is empty");
  return out;
}

std::vector<int> as_int_list(const json& v, const char* key) {
  std::vector<int> out;
  for (double d : as_double_list(v, key)) out.push_back(static_cast<int>(d));
  return out;
}

struct Cell {
  int n, k;
  double lambda, param;
};

std::vector<Cell> make_cells(const Config& cfg) {
  std::vector<Cell> cells;
  for (int n : cfg.n_values)
    for (int k : cfg.k_values)
      for (double lam : cfg.lambda_values)
        for (double p : cfg.noise_params) cells.push_back({n, k, lam, p});
  return cells;
}

std::uint64_t trial_seed(const Config& cfg, int cell_idx, int trial) {
  return CounterRng::derive(cfg.seed,
                            static_cast<std::uint64_t>(cell_idx) * 1000003ull + trial);
}

// Per-(n,k) spectral data, built serially up front so trials only read.
std::map<std::pair<int, int>, std::unique_ptr<Denoiser>> build_denoisers(const Config& cfg) {
  std::map<std::pair<int, int>, std::unique_ptr<Denoiser>> out;
  for (int n : cfg.n_values)
    for (int k : cfg.k_values)
      if (!out.count({n, k})) out.emplace(std::pair{n, k}, std::make_unique<Denoiser>(n, k));
  return out;
}

void run_pool(int jobs, const std::function<void(int)>& work) {
  const int threads = pool_size(jobs);
  if (threads <= 1) {
    for (int j = 0; j < jobs; ++j) work(j);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int j = next.fetch_add(1); j < jobs; j = next.fetch_add(1)) work(j);
    });
  for (auto& th : pool) th.join();
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

int pool_size(int jobs) {
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads <= 0) threads = 1;
  if (const char* cap = std::getenv("MOD1_THREADS")) {
    const int c = std::atoi(cap);
    if (c >= 1) threads = std::min(threads, c);
  }
  return std::max(1, std::min(threads, jobs));
}

std::string csv_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Config parse_config_text(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed config JSON: ") + e.what());
  }
  Config cfg;
  try {
    if (j.contains("function")) cfg.function = j["function"].get<std::string>();
    if (j.contains("n")) cfg.n_values = as_int_list(j["n"], "n");
    if (j.contains("k")) cfg.k_values = as_int_list(j["k"], "k");
    if (j.contains("lambda")) cfg.lambda_values = as_double_list(j["lambda"], "lambda");
    if (j.contains("noise")) {
      const auto& noise = j["noise"];
      if (!noise.is_object() || !noise.contains("model") || !noise.contains("params"))
        throw InvalidArgument("config field 'noise' needs {model, params}");
      cfg.noise_model = noise_model_from_string(noise["model"].get<std::string>());
      cfg.noise_params = as_double_list(noise["params"], "noise.params");
    }
    if (j.contains("trials")) cfg.trials = j["trials"].get<int>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("methods")) {
      cfg.methods.clear();
      for (const auto& m : j["methods"]) cfg.methods.push_back(m.get<std::string>());
    }
    if (j.contains("iqcqpIterations"))
      cfg.iqcqp_iterations = as_int_list(j["iqcqpIterations"], "iqcqpIterations");
    if (j.contains("zeta")) cfg.zeta = j["zeta"].get<double>();
    if (j.contains("output")) cfg.output_dir = j["output"].get<std::string>();
    if (j.contains("tamper")) cfg.tamper = j["tamper"].get<bool>();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("bad config value: ") + e.what());
  }
  if (cfg.trials < 1) throw InvalidArgument("trials must be >= 1");
  if (!(cfg.zeta > 0.0 && cfg.zeta < 1.0)) throw InvalidArgument("zeta must lie in (0,1)");
  if (cfg.methods.empty()) throw InvalidArgument("methods must be non-empty");
  for (const auto& m : cfg.methods)
    if (m != "noisy" && m != "ols" && m != "qcqp" && m != "iqcqp")
      throw InvalidArgument("unknown method: " + m);
  signal_by_name(cfg.function);  // validates the name
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

SweepResult run_sweep(const Config& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const SignalSpec& signal = signal_by_name(cfg.function);
  const std::vector<Cell> cells = make_cells(cfg);
  const auto denoisers = build_denoisers(cfg);

  // method instances: "iqcqp" expands over its iteration list
  struct MethodInst {
    std::string name;
    int iterations;
  };
  std::vector<MethodInst> insts;
  for (const auto& m : cfg.methods) {
    if (m == "iqcqp")
      for (int it : cfg.iqcqp_iterations) insts.push_back({m, it});
    else
      insts.push_back({m, m == "qcqp" ? 1 : 0});
  }

  const int jobs = static_cast<int>(cells.size()) * cfg.trials;
  std::vector<std::vector<ResultRow>> slots(jobs);

  run_pool(jobs, [&](int job) {
    const int cell_idx = job / cfg.trials;
    const int trial = job % cfg.trials;
    const Cell& cell = cells[cell_idx];
    const std::uint64_t seed = trial_seed(cfg, cell_idx, trial);

    const UniformGrid grid = UniformGrid::make(cell.n);
    const SampledInstance inst =
        add_noise(sample_clean(signal, grid), {cfg.noise_model, cell.param, seed});
    const Denoiser& ctx = *denoisers.at({cell.n, cell.k});
    const RealEmbedding hbar = embed(inst.clean_mod1);

    auto base_row = [&](const MethodInst& mi) {
      ResultRow r;
      r.function = cfg.function;
      r.n = cell.n;
      r.k = cell.k;
      r.lambda = cell.lambda;
      r.noise = to_string(cfg.noise_model);
      r.param = cell.param;
      r.zeta = cfg.zeta;
      r.method = mi.name;
      r.iterations = mi.iterations;
      r.trial = trial;
      r.seed = seed;
      return r;
    };

    for (const auto& mi : insts) {
      ResultRow r = base_row(mi);
      if (mi.name == "noisy") {
        r.wrap_rmse_mod1 = wrap_rmse(inst.noisy_mod1, inst.clean_mod1);
        r.plain_rmse_mod1 = plain_rmse(inst.noisy_mod1, inst.clean_mod1);
        r.shifted_rmse_f = std::numeric_limits<double>::quiet_NaN();
        r.shifted_rmse_f_intshift = r.shifted_rmse_f;
        r.correlation = correlation(embed(inst.noisy_mod1), hbar);
      } else if (mi.name == "ols") {
        const UnwrapResult u = ols_unwrap(inst.noisy_mod1, ctx.graph(), cfg.zeta);
        const ShiftedRmse sr = shifted_rmse(u.samples, inst.clean_f);
        r.shifted_rmse_f = sr.rmse;
        r.shifted_rmse_f_intshift = sr.rmse_integer;
        Mod1Series aligned;
        aligned.values.resize(cell.n);
        for (int i = 0; i < cell.n; ++i)
          aligned.values[i] = reduce_mod1(u.samples[i] + sr.shift);
        r.wrap_rmse_mod1 = wrap_rmse(aligned, inst.clean_mod1);
        r.plain_rmse_mod1 = plain_rmse(aligned, inst.clean_mod1);
        r.correlation = correlation(embed(aligned), hbar);
      } else {  // qcqp / iqcqp
        const int iters = mi.name == "qcqp" ? 1 : mi.iterations;
        const DenoiseResult d =
            ctx.iterated_denoise(inst.noisy_mod1, cell.lambda, iters, &inst.clean_mod1);
        r.wrap_rmse_mod1 = wrap_rmse(d.denoised, inst.clean_mod1);
        r.plain_rmse_mod1 = plain_rmse(d.denoised, inst.clean_mod1);
        r.correlation = d.correlation.value();
        const UnwrapResult u = ols_unwrap(d.denoised, ctx.graph(), cfg.zeta);
        const ShiftedRmse sr = shifted_rmse(u.samples, inst.clean_f);
        r.shifted_rmse_f = sr.rmse;
        r.shifted_rmse_f_intshift = sr.rmse_integer;
      }
      slots[job].push_back(std::move(r));
    }
  });

  SweepResult res;
  // rows in (cell, method, trial) order
  for (int cell_idx = 0; cell_idx < static_cast<int>(cells.size()); ++cell_idx)
    for (int m = 0; m < static_cast<int>(insts.size()); ++m)
      for (int trial = 0; trial < cfg.trials; ++trial)
        res.rows.push_back(slots[cell_idx * cfg.trials + trial][m]);

  // per-(cell, method) aggregates
  for (int cell_idx = 0; cell_idx < static_cast<int>(cells.size()); ++cell_idx) {
    for (int m = 0; m < static_cast<int>(insts.size()); ++m) {
      AggregateRow a;
      const ResultRow& proto = slots[cell_idx * cfg.trials][m];
      a.function = proto.function;
      a.n = proto.n;
      a.k = proto.k;
      a.lambda = proto.lambda;
      a.noise = proto.noise;
      a.param = proto.param;
      a.zeta = proto.zeta;
      a.method = proto.method;
      a.iterations = proto.iterations;
      a.trials = cfg.trials;
      std::vector<double> shifted;
      for (int trial = 0; trial < cfg.trials; ++trial) {
        const ResultRow& r = slots[cell_idx * cfg.trials + trial][m];
        a.mean_wrap_rmse_mod1 += r.wrap_rmse_mod1;
        a.mean_shifted_rmse_f += r.shifted_rmse_f;
        a.mean_correlation += r.correlation;
        shifted.push_back(r.shifted_rmse_f);
      }
      a.mean_wrap_rmse_mod1 /= cfg.trials;
      a.mean_shifted_rmse_f /= cfg.trials;
      a.mean_correlation /= cfg.trials;
      a.median_shifted_rmse_f = median(std::move(shifted));
      res.aggregates.push_back(std::move(a));
    }
  }

  res.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

void write_rows_csv(const std::vector<ResultRow>& rows, std::ostream& os) {
  os << "function,n,k,lambda,noise,param,zeta,method,iterations,trial,seed,"
        "wrap_rmse_mod1,plain_rmse_mod1,shifted_rmse_f,shifted_rmse_f_intshift,"
        "correlation\n";
  for (const auto& r : rows) {
    os << r.function << ',' << r.n << ',' << r.k << ',' << csv_double(r.lambda) << ','
       << r.noise << ',' << csv_double(r.param) << ',' << csv_double(r.zeta) << ','
       << r.method << ',' << r.iterations << ',' << r.trial << ',' << r.seed << ','
       << csv_double(r.wrap_rmse_mod1) << ',' << csv_double(r.plain_rmse_mod1) << ','
       << csv_double(r.shifted_rmse_f) << ',' << csv_double(r.shifted_rmse_f_intshift)
       << ',' << csv_double(r.correlation) << '\n';
  }
}

void write_aggregate_csv(const std::vector<AggregateRow>& rows, std::ostream& os) {
  os << "function,n,k,lambda,noise,param,zeta,method,iterations,trials,"
        "mean_wrap_rmse_mod1,mean_shifted_rmse_f,median_shifted_rmse_f,mean_correlation\n";
  for (const auto& a : rows) {
    os << a.function << ',' << a.n << ',' << a.k << ',' << csv_double(a.lambda) << ','
       << a.noise << ',' << csv_double(a.param) << ',' << csv_double(a.zeta) << ','
       << a.method << ',' << a.iterations << ',' << a.trials << ','
       << csv_double(a.mean_wrap_rmse_mod1) << ',' << csv_double(a.mean_shifted_rmse_f)
       << ',' << csv_double(a.median_shifted_rmse_f) << ','
       << csv_double(a.mean_correlation) << '\n';
  }
}

std::vector<std::string> write_sweep_outputs(const Config& cfg, const SweepResult& res) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);
  std::vector<std::string> written;

  auto emit = [&](const std::string& name, auto&& writer) {
    const std::string path = (fs::path(cfg.output_dir) / name).string();
    std::ofstream os(path, std::ios::binary);
    if (!os) throw NumericalFailure("cannot write " + path);
    writer(os);
    written.push_back(path);
  };

  emit("results.csv", [&](std::ostream& os) { write_rows_csv(res.rows, os); });
  emit("aggregate.csv", [&](std::ostream& os) { write_aggregate_csv(res.aggregates, os); });

  // One pair of plots per (n, k, lambda) slice; x is the noise level unless
  // the sweep varies n instead.
  const bool x_is_param = cfg.noise_params.size() > 1 || cfg.n_values.size() <= 1;
  struct SliceKey {
    int n, k;
    double lambda;
    auto operator<=>(const SliceKey&) const = default;
  };
  std::map<SliceKey, std::map<std::string, SvgSeries>> slices;
  for (const auto& a : res.aggregates) {
    const SliceKey key{x_is_param ? a.n : 0, a.k, a.lambda};
    std::string label = a.method;
    if (a.method == "iqcqp") label += "-" + std::to_string(a.iterations);
    auto& s = slices[key][label];
    s.label = label;
    s.x.push_back(x_is_param ? a.param : a.n);
    s.y.push_back(a.mean_wrap_rmse_mod1);
  }
  std::map<SliceKey, std::map<std::string, SvgSeries>> slices_f;
  for (const auto& a : res.aggregates) {
    if (a.method == "noisy") continue;  // no unwrapped estimate
    const SliceKey key{x_is_param ? a.n : 0, a.k, a.lambda};
    std::string label = a.method;
    if (a.method == "iqcqp") label += "-" + std::to_string(a.iterations);
    auto& s = slices_f[key][label];
    s.label = label;
    s.x.push_back(x_is_param ? a.param : a.n);
    s.y.push_back(a.mean_shifted_rmse_f);
  }

  auto slice_name = [&](const SliceKey& key, const char* what) {
    std::ostringstream ss;
    ss << "sweep_" << what;
    if (key.n > 0) ss << "_n" << key.n;
    ss << "_k" << key.k << "_lam" << key.lambda << ".svg";
    return ss.str();
  };
  const std::string xlabel = x_is_param ? "noise level" : "n";
  for (const auto& [key, labelled] : slices) {
    std::vector<SvgSeries> series;
    for (const auto& [label, s] : labelled) series.push_back(s);
    emit(slice_name(key, "mod1"), [&](std::ostream& os) {
      write_line_plot(os, "mean wrap RMSE, denoised residues", xlabel, "RMSE", series, true);
    });
  }
  for (const auto& [key, labelled] : slices_f) {
    std::vector<SvgSeries> series;
    for (const auto& [label, s] : labelled) series.push_back(s);
    emit(slice_name(key, "f"), [&](std::ostream& os) {
      write_line_plot(os, "mean shifted RMSE, recovered samples", xlabel, "RMSE", series, true);
    });
  }

  emit("timing.json", [&](std::ostream& os) {
    json t;
    t["wall_ms"] = res.wall_ms;
    t["rows"] = res.rows.size();
    t["threads"] = pool_size(static_cast<int>(res.rows.size()));
    os << t.dump(2) << "\n";
  });
  return written;
}

BoundBattery run_bound_battery(const Config& cfg) {
  const SignalSpec& signal = signal_by_name(cfg.function);
  const std::vector<Cell> cells = make_cells(cfg);
  const auto denoisers = build_denoisers(cfg);

  const int jobs = static_cast<int>(cells.size()) * cfg.trials;
  std::vector<BoundTrialRow> rows(jobs);

  run_pool(jobs, [&](int job) {
    const int cell_idx = job / cfg.trials;
    const int trial = job % cfg.trials;
    const Cell& cell = cells[cell_idx];
    const std::uint64_t seed = trial_seed(cfg, cell_idx, trial);

    const UniformGrid grid = UniformGrid::make(cell.n);
    const SampledInstance inst =
        add_noise(sample_clean(signal, grid), {cfg.noise_model, cell.param, seed});
    const Denoiser& ctx = *denoisers.at({cell.n, cell.k});

    DenoiseResult d = ctx.denoise(inst.noisy_mod1, cell.lambda, &inst.clean_mod1);
    if (cfg.tamper) d.trs.g.array() += 0.1;

    BoundTrialRow row;
    row.n = cell.n;
    row.k = cell.k;
    row.lambda = cell.lambda;
    row.param = cell.param;
    row.trial = trial;
    row.seed = seed;
    row.delta = measure_delta(inst.noisy_mod1, inst.clean_mod1);
    row.mu = d.trs.mu;
    row.case_tag = to_string(d.trs.case_tag);

    // Certificate recomputed from the (possibly tampered) vector.
    const BlockLaplacian h{cell.lambda, ctx.lap()};
    const RealEmbedding zbar = embed(inst.noisy_mod1);
    const double radius_sq = static_cast<double>(cell.n);
    const Vector kkt = 2.0 * h.apply(d.trs.g) + d.trs.mu * d.trs.g - 2.0 * zbar.v;
    row.kkt_residual = kkt.norm();
    row.constraint_residual = std::abs(d.trs.g.squaredNorm() - radius_sq);
    row.psd_margin = d.trs.mu + 2.0 * cell.lambda * ctx.lap_spectrum().eigenvalues(0);
    const bool mu_ok = d.trs.mu <= 2.0 + 1e-8;  // unit-modulus data
    row.certificate_ok = row.kkt_residual <= 1e-8 * (1.0 + zbar.v.norm()) &&
                         row.constraint_residual <= 1e-8 * radius_sq &&
                         row.psd_margin >= -1e-10 && mu_ok;

    const DenoiseParams params{cell.k, cell.lambda, 1};
    row.checks = run_bound_checks(inst, d, params, signal, ctx);
    row.ok = row.certificate_ok;
    for (const auto& c : row.checks) row.ok = row.ok && c.satisfied;
    rows[job] = std::move(row);
  });

  BoundBattery battery;
  battery.rows = std::move(rows);
  for (const auto& r : battery.rows)
    if (!r.ok) ++battery.violations;
  return battery;
}

void write_bound_csv(const BoundBattery& battery, std::ostream& os) {
  os << "n,k,lambda,param,trial,seed,delta,mu,case,kkt_residual,constraint_residual,"
        "psd_margin,certificate_ok";
  if (!battery.rows.empty())
    for (const auto& c : battery.rows.front().checks)
      os << ',' << c.name << "_margin," << c.name << "_hyp," << c.name << "_ok";
  os << ",ok\n";
  for (const auto& r : battery.rows) {
    os << r.n << ',' << r.k << ',' << csv_double(r.lambda) << ',' << csv_double(r.param)
       << ',' << r.trial << ',' << r.seed << ',' << csv_double(r.delta) << ','
       << csv_double(r.mu) << ',' << r.case_tag << ',' << csv_double(r.kkt_residual) << ','
       << csv_double(r.constraint_residual) << ',' << csv_double(r.psd_margin) << ','
       << (r.certificate_ok ? 1 : 0);
    for (const auto& c : r.checks)
      os << ',' << csv_double(c.margin) << ',' << (c.hypotheses_met ? 1 : 0) << ','
         << (c.satisfied ? 1 : 0);
    os << ',' << (r.ok ? 1 : 0) << '\n';
  }
}

}  // namespace mod1::experiment
