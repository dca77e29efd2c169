// Copyright (C) 2026 tdpwm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "tdpwm/network.hpp"

namespace tdpwm {

// Monte Carlo experiment configuration.
struct TrialConfig {
  std::size_t n_trials = 10000;
  std::size_t n_inputs = 50;
  VariationModel variation{};
  int averaging_runs = 50;  // jittered measurements averaged per trial
  std::uint64_t seed = 1;   // trial-stream seed (one substream per trial)
};
void validate(const TrialConfig& tc);

struct TrialRecord {
  double oracle_raw = 0.0;   // sum of w_i * width_i / t_in, before rectification
  double oracle_norm = 0.0;  // rectified, scaled by the ideal gain, in [0, 1]
  double sim_norm = 0.0;     // simulated output width / t_out
  double error_pct = 0.0;    // |sim - oracle| in percent of full scale
};

struct ErrorStats {
  double mean_abs_error_pct = 0.0;
  double max_abs_error_pct = 0.0;
  double error_std_s = 0.0;  // std dev of the signed output error, seconds
  std::vector<TrialRecord> per_trial;
};

// Reference weighted sum, computed in extended precision independently of
// the circuit pipeline: sum of w_i * (width_i / t_in).
double oracle_weighted_sum(std::span<const int> weights,
                           std::span<const double> widths, double t_in);

// Output-edge timing jitter: max(width + delta, 0) with
// delta ~ Normal(0, jitter_sigma). jitter_sigma == 0 is the identity and
// draws nothing.
double apply_jitter(double width, const VariationModel& m, Rng& rng);

// Mean of `runs` independently jittered observations of the same width.
double average_jittered(double width, const VariationModel& m, Rng& rng,
                        int runs);

// Random-weight random-input experiment against the rectified reference
// value. Per trial: fresh +-1 weights, widths uniform on [0, t_in], fresh
// variation multipliers, then the jitter-averaged output. Both the
// reference and the simulated output are normalized to full scale and the
// error is recorded in percent of full scale; trials where both sides are
// zero count as zero error. Deterministic given tc.seed.
ErrorStats run_error_experiment(const TrialConfig& tc,
                                const SubthresholdParams& dev,
                                const NeuronConfig& cfg);

struct SweepPoint {
  double input_width = 0.0;  // seconds
  double mean_output = 0.0;  // seconds, mean over averaging runs
  double std_output = 0.0;   // seconds, deviation over averaging runs
};

// Input-output characteristic: sweeps the first synapse's input width
// across [0, t_in] with all other inputs held low. Each point reports the
// mean and deviation of `averaging_runs` jittered measurements.
std::vector<SweepPoint> sweep_input_output(
    std::span<const BinarySynapseUnit> synapses, const SubthresholdParams& dev,
    const NeuronConfig& cfg, const VariationModel& var, int n_points,
    int averaging_runs);

}  // namespace tdpwm
