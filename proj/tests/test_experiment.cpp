#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "mod1/errors.hpp"
#include "mod1/experiment.hpp"

using namespace mod1;
using namespace mod1::experiment;

TEST_CASE("config parsing accepts scalars and arrays") {
  const Config cfg = parse_config_text(R"({
    "function": "f1",
    "n": 64,
    "k": [1, 2],
    "lambda": 0.3,
    "noise": {"model": "uniform", "params": [0.1, 0.2]},
    "trials": 3,
    "seed": 9,
    "methods": ["noisy", "qcqp"],
    "zeta": 0.5,
    "output": "/tmp/x"
  })");
  CHECK(cfg.n_values == std::vector<int>{64});
  CHECK(cfg.k_values == std::vector<int>{1, 2});
  CHECK(cfg.lambda_values == std::vector<double>{0.3});
  CHECK(cfg.noise_params == std::vector<double>{0.1, 0.2});
  CHECK(cfg.trials == 3);
  CHECK(cfg.methods.size() == 2);

  CHECK_THROWS_AS(parse_config_text("{not json"), InvalidArgument);
  CHECK_THROWS_AS(parse_config_text(R"({"methods": ["bogus"]})"), InvalidArgument);
  CHECK_THROWS_AS(parse_config_text(R"({"trials": 0})"), InvalidArgument);
  CHECK_THROWS_AS(parse_config_text(R"({"zeta": 1.5})"), InvalidArgument);
  CHECK_THROWS_AS(parse_config_text(R"({"function": "bogus"})"), InvalidArgument);
  CHECK_THROWS_AS(parse_config_text(R"({"n": []})"), InvalidArgument);
  CHECK_THROWS_AS(load_config("/nonexistent/cfg.json"), InvalidArgument);
}

TEST_CASE("single-cell sweep produces one row per method instance") {
  Config cfg;
  cfg.n_values = {48};
  cfg.k_values = {2};
  cfg.lambda_values = {0.1};
  cfg.noise_params = {0.1};
  cfg.trials = 1;
  cfg.seed = 5;
  cfg.methods = {"noisy", "ols", "qcqp", "iqcqp"};
  cfg.iqcqp_iterations = {3, 10};
  const SweepResult res = run_sweep(cfg);
  CHECK(res.rows.size() == 5);  // iqcqp expands to two instances
  CHECK(res.aggregates.size() == 5);
  CHECK(res.rows[0].method == "noisy");
  CHECK(res.rows[4].iterations == 10);
}

TEST_CASE("sweep output is deterministic and ordered") {
  Config cfg;
  cfg.n_values = {32};
  cfg.k_values = {1, 2};
  cfg.lambda_values = {0.1};
  cfg.noise_params = {0.05, 0.15};
  cfg.trials = 2;
  cfg.seed = 11;
  cfg.methods = {"ols", "qcqp"};

  std::ostringstream a, b;
  write_rows_csv(run_sweep(cfg).rows, a);
  write_rows_csv(run_sweep(cfg).rows, b);
  CHECK(a.str() == b.str());

  const SweepResult res = run_sweep(cfg);
  // (cell, method, trial) ordering: trials adjacent within a method block
  REQUIRE(res.rows.size() == 16);
  CHECK(res.rows[0].method == "ols");
  CHECK(res.rows[0].trial == 0);
  CHECK(res.rows[1].trial == 1);
  CHECK(res.rows[2].method == "qcqp");
  // same (cell, trial) shares the instance seed across methods
  CHECK(res.rows[0].seed == res.rows[2].seed);
  CHECK(res.rows[0].seed != res.rows[1].seed);
}

TEST_CASE("bound battery passes clean and flags tampering") {
  Config cfg;
  cfg.n_values = {64};
  cfg.k_values = {2};
  cfg.lambda_values = {0.1};
  cfg.noise_params = {0.1};
  cfg.trials = 3;
  cfg.seed = 21;
  const BoundBattery good = run_bound_battery(cfg);
  CHECK(good.violations == 0);
  for (const auto& row : good.rows) {
    CHECK(row.certificate_ok);
    CHECK(row.mu <= 2.0 + 1e-8);
    CHECK(row.checks.size() == 5);
  }

  Config bad = cfg;
  bad.tamper = true;
  const BoundBattery tampered = run_bound_battery(bad);
  CHECK(tampered.violations == static_cast<int>(tampered.rows.size()));
  for (const auto& row : tampered.rows) CHECK_FALSE(row.certificate_ok);

  std::ostringstream os;
  write_bound_csv(good, os);
  CHECK(os.str().find("kkt_residual") != std::string::npos);
  CHECK(os.str().find("correlation-simple_margin") != std::string::npos);
}

TEST_CASE("results do not depend on the worker pool size") {
  Config cfg;
  cfg.n_values = {40};
  cfg.k_values = {1, 2};
  cfg.lambda_values = {0.1};
  cfg.noise_params = {0.1, 0.2};
  cfg.trials = 3;
  cfg.seed = 77;
  cfg.methods = {"ols", "qcqp"};
  setenv("MOD1_THREADS", "1", 1);
  std::ostringstream serial;
  write_rows_csv(run_sweep(cfg).rows, serial);
  setenv("MOD1_THREADS", "4", 1);
  std::ostringstream parallel;
  write_rows_csv(run_sweep(cfg).rows, parallel);
  unsetenv("MOD1_THREADS");
  CHECK(serial.str() == parallel.str());
}

TEST_CASE("denoised error shrinks with the sample count") {
  Config cfg;
  cfg.n_values = {100, 400};
  cfg.k_values = {3};
  cfg.lambda_values = {0.3};
  cfg.noise_params = {0.25};
  cfg.trials = 10;
  cfg.seed = 99;
  cfg.methods = {"qcqp"};
  const SweepResult res = run_sweep(cfg);
  double wrap_small = 0.0, wrap_large = 0.0;
  for (const auto& a : res.aggregates) {
    if (a.n == 100) wrap_small = a.mean_wrap_rmse_mod1;
    if (a.n == 400) wrap_large = a.mean_wrap_rmse_mod1;
  }
  CHECK(wrap_large < wrap_small);
}

TEST_CASE("worker pool respects the thread cap") {
  setenv("MOD1_THREADS", "2", 1);
  CHECK(pool_size(100) == 2);
  CHECK(pool_size(1) == 1);
  setenv("MOD1_THREADS", "0", 1);  // ignored, falls back to hardware
  CHECK(pool_size(1) == 1);
  unsetenv("MOD1_THREADS");
  CHECK(pool_size(4) >= 1);
}

TEST_CASE("csv float formatting is stable") {
  CHECK(csv_double(0.1) == "0.10000000000000001");
  CHECK(csv_double(1.0) == "1");
  CHECK(csv_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
}
