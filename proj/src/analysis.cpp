// Copyright (C) 2026 tdpwm authors
// SPDX-License-Identifier: Apache-2.0
#include "tdpwm/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace tdpwm {

void validate(const TrialConfig& tc) {
  if (tc.n_trials < 1) throw ConfigError("trial config: n_trials must be >= 1");
  if (tc.n_inputs < 1) throw ConfigError("trial config: n_inputs must be >= 1");
  if (tc.averaging_runs < 1)
    throw ConfigError("trial config: averaging_runs must be >= 1");
  validate(tc.variation);
}

double oracle_weighted_sum(std::span<const int> weights,
                           std::span<const double> widths, double t_in) {
  if (weights.size() != widths.size())
    throw DomainError("oracle_weighted_sum: length mismatch");
  if (!(t_in > 0.0)) throw DomainError("oracle_weighted_sum: t_in must be > 0");
  long double acc = 0.0L;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] != +1 && weights[i] != -1)
      throw DomainError("oracle_weighted_sum: weight must be +1 or -1");
    if (!(widths[i] >= 0.0) || widths[i] > t_in)
      throw DomainError("oracle_weighted_sum: width outside [0, t_in]");
    acc += static_cast<long double>(weights[i]) *
           (static_cast<long double>(widths[i]) / t_in);
  }
  return static_cast<double>(acc);
}

double apply_jitter(double width, const VariationModel& m, Rng& rng) {
  if (!(width >= 0.0)) throw DomainError("apply_jitter: negative width");
  if (m.jitter_sigma == 0.0) return width;
  return std::max(width + rng.normal(0.0, m.jitter_sigma), 0.0);
}

double average_jittered(double width, const VariationModel& m, Rng& rng,
                        int runs) {
  if (runs < 1) throw DomainError("average_jittered: runs must be >= 1");
  long double acc = 0.0L;
  for (int r = 0; r < runs; ++r) acc += apply_jitter(width, m, rng);
  return static_cast<double>(acc / runs);
}

ErrorStats run_error_experiment(const TrialConfig& tc,
                                const SubthresholdParams& dev,
                                const NeuronConfig& cfg) {
  validate(tc);
  validate(dev);
  validate(cfg);

  const double t_in = cfg.frame.t_in;
  const double t_out = cfg.frame.t_out;
  const double gain = ideal_gain(dev, cfg);

  ErrorStats stats;
  stats.per_trial.reserve(tc.n_trials);

  std::vector<int> weights(tc.n_inputs);
  std::vector<double> widths(tc.n_inputs);
  std::vector<PwmSignal> inputs(tc.n_inputs);
  std::vector<BinarySynapseUnit> units(tc.n_inputs);

  // Mismatch multipliers are sampled up front from variation.seed and stay
  // fixed across trials (one fabricated device); reprogramming the weight
  // only changes which transistor carries the current. Trial streams from
  // tc.seed cover weights, widths and jitter.
  if (tc.variation.sigma_vth > 0.0) {
    const auto pairs =
        sample_variation(tc.variation, dev.slope_norm, tc.n_inputs);
    for (std::size_t i = 0; i < tc.n_inputs; ++i) {
      units[i].variation_plus = pairs[i].plus;
      units[i].variation_minus = pairs[i].minus;
    }
  }

  long double err_sum = 0.0L;       // |error| in percent
  long double signed_sum = 0.0L;    // signed error in seconds
  long double signed_sq_sum = 0.0L;

  for (std::size_t t = 0; t < tc.n_trials; ++t) {
    Rng rng(tc.seed, t);

    for (std::size_t i = 0; i < tc.n_inputs; ++i) {
      weights[i] = rng.sign();
      widths[i] = rng.uniform() * t_in;
      inputs[i].width = widths[i];
      units[i].weight = weights[i];
    }

    const NeuronOutput out = simulate_neuron(inputs, units, dev, cfg);
    const double observed =
        average_jittered(out.w_relu, tc.variation, rng, tc.averaging_runs);

    TrialRecord rec;
    rec.oracle_raw = oracle_weighted_sum(weights, widths, t_in);
    rec.oracle_norm = std::max(rec.oracle_raw, 0.0) * gain;
    rec.sim_norm = observed / t_out;
    rec.error_pct = 100.0 * std::abs(rec.sim_norm - rec.oracle_norm);
    stats.per_trial.push_back(rec);

    const double signed_err_s = (rec.sim_norm - rec.oracle_norm) * t_out;
    err_sum += rec.error_pct;
    signed_sum += signed_err_s;
    signed_sq_sum += static_cast<long double>(signed_err_s) * signed_err_s;
    stats.max_abs_error_pct = std::max(stats.max_abs_error_pct, rec.error_pct);
  }

  const long double n = static_cast<long double>(tc.n_trials);
  stats.mean_abs_error_pct = static_cast<double>(err_sum / n);
  const long double mean_signed = signed_sum / n;
  const long double var = signed_sq_sum / n - mean_signed * mean_signed;
  stats.error_std_s = static_cast<double>(std::sqrt(std::max(var, 0.0L)));
  return stats;
}

std::vector<SweepPoint> sweep_input_output(
    std::span<const BinarySynapseUnit> synapses, const SubthresholdParams& dev,
    const NeuronConfig& cfg, const VariationModel& var, int n_points,
    int averaging_runs) {
  if (n_points < 2) throw DomainError("sweep: n_points must be >= 2");
  if (averaging_runs < 1) throw DomainError("sweep: averaging_runs must be >= 1");
  if (synapses.empty()) throw DomainError("sweep: no synapses");
  validate(var);

  const double t_in = cfg.frame.t_in;
  std::vector<PwmSignal> inputs(synapses.size());
  std::vector<SweepPoint> points;
  points.reserve(n_points);

  Rng rng(var.seed, 0);
  for (int k = 0; k < n_points; ++k) {
    const double w = t_in * static_cast<double>(k) / (n_points - 1);
    inputs[0].width = w;
    const NeuronOutput out = simulate_neuron(inputs, synapses, dev, cfg);

    // Accumulate around the deterministic width so a jitter-free sweep
    // reports a deviation of exactly zero.
    long double sum = 0.0L, sq_sum = 0.0L;
    for (int r = 0; r < averaging_runs; ++r) {
      const long double d = apply_jitter(out.w_relu, var, rng) - out.w_relu;
      sum += d;
      sq_sum += d * d;
    }
    const long double mean_d = sum / averaging_runs;
    const long double var_d = sq_sum / averaging_runs - mean_d * mean_d;
    points.push_back(SweepPoint{
        w, static_cast<double>(out.w_relu + mean_d),
        static_cast<double>(std::sqrt(std::max(var_d, 0.0L)))});
  }
  return points;
}

}  // namespace tdpwm
