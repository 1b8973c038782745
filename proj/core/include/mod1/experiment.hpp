#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mod1/metrics.hpp"
#include "mod1/signals.hpp"

namespace mod1::experiment {

/// Sweep/battery description, normally loaded from a JSON file. Scalar or
/// array is accepted for the gridded fields.
struct Config {
  std::string function = "f1";
  std::vector<int> n_values{500};
  std::vector<int> k_values{2};
  std::vector<double> lambda_values{0.1};
  NoiseModel noise_model = NoiseModel::uniform;
  std::vector<double> noise_params{0.15};
  int trials = 20;
  std::uint64_t seed = 1;
  std::vector<std::string> methods{"noisy", "ols", "qcqp", "iqcqp"};
  std::vector<int> iqcqp_iterations{10};
  double zeta = 0.5;
  std::string output_dir = ".";
  bool tamper = false;  // negative control: corrupt the solver output before checks
};

Config load_config(const std::string& path);
Config parse_config_text(const std::string& json_text);

struct ResultRow {
  std::string function;
  int n = 0;
  int k = 0;
  double lambda = 0.0;
  std::string noise;
  double param = 0.0;
  double zeta = 0.5;
  std::string method;
  int iterations = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  double wrap_rmse_mod1 = 0.0;
  double plain_rmse_mod1 = 0.0;
  double shifted_rmse_f = 0.0;
  double shifted_rmse_f_intshift = 0.0;
  double correlation = 0.0;
};

struct AggregateRow {
  std::string function;
  int n = 0;
  int k = 0;
  double lambda = 0.0;
  std::string noise;
  double param = 0.0;
  double zeta = 0.5;
  std::string method;
  int iterations = 0;
  int trials = 0;
  double mean_wrap_rmse_mod1 = 0.0;
  double mean_shifted_rmse_f = 0.0;
  double median_shifted_rmse_f = 0.0;
  double mean_correlation = 0.0;
};

struct SweepResult {
  std::vector<ResultRow> rows;            // sorted by (cell, method, trial)
  std::vector<AggregateRow> aggregates;   // per (cell, method)
  double wall_ms = 0.0;
};

/// Runs every (n, k, lambda, noise param) x trial cell; trials of a cell
/// share the derived per-trial instance across methods. Parallel over a
/// worker pool capped by MOD1_THREADS, output independent of scheduling.
SweepResult run_sweep(const Config& cfg);

void write_rows_csv(const std::vector<ResultRow>& rows, std::ostream& os);
void write_aggregate_csv(const std::vector<AggregateRow>& rows, std::ostream& os);

/// Writes results.csv, aggregate.csv, per-slice SVG plots and timing.json
/// under cfg.output_dir. Returns the paths written.
std::vector<std::string> write_sweep_outputs(const Config& cfg, const SweepResult& res);

/// One bound-battery trial: solver certificate plus the five theory checks.
struct BoundTrialRow {
  int n = 0;
  int k = 0;
  double lambda = 0.0;
  double param = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;
  double delta = 0.0;
  double mu = 0.0;
  std::string case_tag;
  double kkt_residual = 0.0;
  double constraint_residual = 0.0;
  double psd_margin = 0.0;
  bool certificate_ok = false;
  std::vector<BoundCheck> checks;
  bool ok = false;  // certificate and every in-hypothesis check
};

struct BoundBattery {
  std::vector<BoundTrialRow> rows;
  int violations = 0;
};

BoundBattery run_bound_battery(const Config& cfg);
void write_bound_csv(const BoundBattery& battery, std::ostream& os);

/// Worker-pool size: min(hardware, MOD1_THREADS when set, jobs).
int pool_size(int jobs);

/// Fixed-format float for CSV cells (%.17g, locale-independent).
std::string csv_double(double v);

}  // namespace mod1::experiment
