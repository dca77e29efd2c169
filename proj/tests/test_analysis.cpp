// Copyright (C) 2026 tdpwm authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "tdpwm/analysis.hpp"

using namespace tdpwm;

namespace {

NeuronConfig calib_cfg(double n_inputs_gain) {
  // Normalized gain close to 1 / n_inputs_gain.
  NeuronConfig cfg;
  cfg.v_theta = 0.2;
  cfg.v_dd = 1.0;
  cfg.frame = {2e-6, 2e-6};
  SubthresholdParams dev;
  const double c_total =
      on_current(dev) * cfg.frame.t_in * n_inputs_gain / cfg.v_theta;
  cfg.c_n = c_total / 8.0;
  cfg.c_d = c_total - cfg.c_n;
  return cfg;
}

}  // namespace

TEST_CASE("oracle_weighted_sum") {
  const std::vector<int> w1 = {+1, -1};
  const std::vector<double> d1 = {300e-9, 300e-9};
  CHECK(oracle_weighted_sum(w1, d1, 300e-9) == 0.0);

  const std::vector<int> w2 = {+1};
  const std::vector<double> d2 = {150e-9};
  CHECK(oracle_weighted_sum(w2, d2, 300e-9) == 0.5);

  const std::vector<int> w3 = {+1, -1};
  const std::vector<double> d3 = {300e-9};
  CHECK_THROWS_AS(oracle_weighted_sum(w3, d3, 300e-9), DomainError);
  const std::vector<int> w4 = {+2};
  CHECK_THROWS_AS(oracle_weighted_sum(w4, d2, 300e-9), DomainError);
}

TEST_CASE("oracle_weighted_sum matches a compensated reference") {
  Rng rng(101);
  const std::size_t n = 100;
  std::vector<int> w(n);
  std::vector<double> d(n);
  const double t_in = 2e-6;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = rng.sign();
    d[i] = rng.uniform() * t_in;
  }

  // Neumaier-compensated double summation as an independent route.
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double term = w[i] * (d[i] / t_in);
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  CHECK(oracle_weighted_sum(w, d, t_in) ==
        doctest::Approx(sum + comp).epsilon(1e-13));
}

TEST_CASE("ideal 100-synapse neuron matches the oracle after normalization") {
  Rng rng(102);
  SubthresholdParams dev;
  dev.ideal_off = true;
  const NeuronConfig cfg = calib_cfg(100.0);
  const std::size_t n = 100;

  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> w(n);
    std::vector<double> d(n);
    std::vector<PwmSignal> inputs(n);
    std::vector<BinarySynapseUnit> syn(n);
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = rng.sign();
      d[i] = rng.uniform() * cfg.frame.t_in;
      inputs[i].width = d[i];
      syn[i].weight = w[i];
    }
    const NeuronOutput out = simulate_neuron(inputs, syn, dev, cfg);
    const double expected =
        std::max(oracle_weighted_sum(w, d, cfg.frame.t_in), 0.0) *
        ideal_gain(dev, cfg);
    const double got = out.w_relu / cfg.frame.t_out;
    if (expected == 0.0)
      CHECK(got == 0.0);
    else
      CHECK(std::abs(got - expected) <= 1e-9 * expected);
  }
}

TEST_CASE("apply_jitter") {
  VariationModel none;
  Rng rng(5);
  CHECK(apply_jitter(123e-9, none, rng) == 123e-9);

  VariationModel m;
  m.jitter_sigma = 10e-9;
  Rng rng2(6);
  double min_seen = 1.0;
  for (int i = 0; i < 200; ++i)
    min_seen = std::min(min_seen, apply_jitter(5e-9, m, rng2));
  CHECK(min_seen == 0.0);  // clamped at zero, never negative

  CHECK_THROWS_AS(apply_jitter(-1e-9, m, rng2), DomainError);
}

TEST_CASE("apply_jitter sampling statistics") {
  VariationModel m;
  m.jitter_sigma = 10e-9;
  Rng rng(7);
  const double base = 1e-6;
  const int n = 100000;
  long double sum = 0.0L, sq = 0.0L;
  for (int i = 0; i < n; ++i) {
    const long double d = apply_jitter(base, m, rng) - base;
    sum += d;
    sq += d * d;
  }
  const double mean = static_cast<double>(sum / n);
  const double stddev =
      std::sqrt(static_cast<double>(sq / n) - mean * mean);
  CHECK(stddev == doctest::Approx(10e-9).epsilon(0.02));
}

TEST_CASE("average_jittered") {
  VariationModel none;
  Rng rng(8);
  CHECK(average_jittered(250e-9, none, rng, 50) == 250e-9);

  VariationModel m;
  m.jitter_sigma = 20e-9;
  Rng a(9), b(9);
  CHECK(average_jittered(1e-6, m, a, 1) == apply_jitter(1e-6, m, b));

  CHECK_THROWS_AS(average_jittered(1e-6, m, a, 0), DomainError);
}

TEST_CASE("averaging 50 runs shrinks the jitter by about 1/sqrt(50)") {
  VariationModel m;
  m.jitter_sigma = 20e-9;
  const double base = 1e-6;
  const int reps = 2000;
  long double sum = 0.0L, sq = 0.0L;
  for (int r = 0; r < reps; ++r) {
    Rng rng(202, static_cast<std::uint64_t>(r));
    const long double d = average_jittered(base, m, rng, 50) - base;
    sum += d;
    sq += d * d;
  }
  const double mean = static_cast<double>(sum / reps);
  const double stddev = std::sqrt(static_cast<double>(sq / reps) - mean * mean);
  CHECK(stddev == doctest::Approx(20e-9 / std::sqrt(50.0)).epsilon(0.10));
}

TEST_CASE("run_error_experiment: ideal devices are exact") {
  TrialConfig tc;
  tc.n_trials = 300;
  tc.n_inputs = 20;
  tc.averaging_runs = 5;
  tc.seed = 12;

  SubthresholdParams dev;
  dev.ideal_off = true;
  const NeuronConfig cfg = calib_cfg(20.0);

  const ErrorStats stats = run_error_experiment(tc, dev, cfg);
  CHECK(stats.mean_abs_error_pct < 1e-6);
  CHECK(stats.max_abs_error_pct < 1e-6);
  CHECK(stats.per_trial.size() == 300);
}

TEST_CASE("run_error_experiment: deterministic and prefix-stable") {
  TrialConfig tc;
  tc.n_trials = 100;
  tc.n_inputs = 10;
  tc.averaging_runs = 3;
  tc.seed = 13;
  tc.variation.sigma_vth = 0.01;
  tc.variation.jitter_sigma = 20e-9;
  tc.variation.seed = 14;

  SubthresholdParams dev;
  const NeuronConfig cfg = calib_cfg(10.0);

  const ErrorStats a = run_error_experiment(tc, dev, cfg);
  const ErrorStats b = run_error_experiment(tc, dev, cfg);
  REQUIRE(a.per_trial.size() == b.per_trial.size());
  for (std::size_t t = 0; t < a.per_trial.size(); ++t)
    CHECK(a.per_trial[t].sim_norm == b.per_trial[t].sim_norm);
  CHECK(a.mean_abs_error_pct == b.mean_abs_error_pct);

  TrialConfig doubled = tc;
  doubled.n_trials = 200;
  const ErrorStats c = run_error_experiment(doubled, dev, cfg);
  for (std::size_t t = 0; t < 100; ++t) {
    CHECK(c.per_trial[t].oracle_raw == a.per_trial[t].oracle_raw);
    CHECK(c.per_trial[t].sim_norm == a.per_trial[t].sim_norm);
  }
}

TEST_CASE("run_error_experiment: variation produces nonzero bounded error") {
  TrialConfig tc;
  tc.n_trials = 500;
  tc.n_inputs = 50;
  tc.averaging_runs = 10;
  tc.seed = 15;
  tc.variation.sigma_vth = 0.011;
  tc.variation.jitter_sigma = 20e-9;
  tc.variation.seed = 7;

  SubthresholdParams dev;
  const NeuronConfig cfg = calib_cfg(35.0);

  const ErrorStats stats = run_error_experiment(tc, dev, cfg);
  CHECK(stats.mean_abs_error_pct > 0.3);
  CHECK(stats.mean_abs_error_pct < 5.0);
  CHECK(stats.max_abs_error_pct >= stats.mean_abs_error_pct);
  CHECK(stats.error_std_s > 0.0);
}

TEST_CASE("sweep_input_output: ideal sweep is linear through the origin") {
  SubthresholdParams dev;
  dev.ideal_off = true;
  const NeuronConfig cfg = calib_cfg(1.0);
  const std::vector<BinarySynapseUnit> syn(1);
  VariationModel none;

  const auto points = sweep_input_output(syn, dev, cfg, none, 9, 4);
  REQUIRE(points.size() == 9);
  CHECK(points.front().input_width == 0.0);
  CHECK(points.front().mean_output == 0.0);
  CHECK(points.back().input_width == cfg.frame.t_in);

  const double slope = on_current(dev) * cfg.frame.t_out /
                       ((cfg.c_d + cfg.c_n) * cfg.v_theta);
  for (const auto& p : points) {
    CHECK(p.mean_output ==
          doctest::Approx(slope * p.input_width).epsilon(1e-12));
    CHECK(p.std_output == 0.0);
  }
}

TEST_CASE("sweep_input_output: leakage shows up as an analytic offset") {
  SubthresholdParams dev;  // leakage enabled
  const NeuronConfig cfg = calib_cfg(3.0);
  const std::vector<BinarySynapseUnit> syn(3);  // all +1 weights
  VariationModel none;

  const auto points = sweep_input_output(syn, dev, cfg, none, 5, 1);

  const double t_in = cfg.frame.t_in;
  const double c_total = cfg.c_d + cfg.c_n;
  const double i_on = on_current(dev);
  const double leak_sel = dev.i0;
  const double leak_unsel = dev.i0 * std::exp(-dev.v_dd / dev.slope_norm);
  const double leak_on_unsel = dev.i0 * std::exp(-dev.v_w / dev.slope_norm);

  for (const auto& p : points) {
    const double w = p.input_width;
    const double q_plus = w * i_on + (t_in - w) * leak_sel + 2.0 * t_in * leak_sel;
    const double q_minus =
        w * leak_on_unsel + (t_in - w) * leak_unsel + 2.0 * t_in * leak_unsel;
    const double expected = (q_plus - q_minus) / (c_total * cfg.v_theta) *
                            cfg.frame.t_out;
    CHECK(p.mean_output == doctest::Approx(expected).epsilon(1e-10));
  }
  CHECK(points.front().mean_output > 0.0);  // offset at zero input
}

TEST_CASE("sweep_input_output: jitter produces a reported deviation") {
  SubthresholdParams dev;
  dev.ideal_off = true;
  const NeuronConfig cfg = calib_cfg(1.0);
  const std::vector<BinarySynapseUnit> syn(1);
  VariationModel m;
  m.jitter_sigma = 20e-9;
  m.seed = 55;

  const auto points = sweep_input_output(syn, dev, cfg, m, 5, 200);
  const auto a = sweep_input_output(syn, dev, cfg, m, 5, 200);
  for (std::size_t k = 1; k < points.size(); ++k) {
    CHECK(points[k].std_output == doctest::Approx(20e-9).epsilon(0.25));
    CHECK(points[k].mean_output == a[k].mean_output);  // deterministic
  }
  CHECK_THROWS_AS(sweep_input_output(syn, dev, cfg, m, 1, 10), DomainError);
}
