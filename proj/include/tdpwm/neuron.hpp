// Copyright (C) 2026 tdpwm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "tdpwm/device.hpp"
#include "tdpwm/signal.hpp"

namespace tdpwm {

// Electrical configuration of one dual-rail neuron. Both rails share the
// same capacitances, threshold and supply, so their conversion gains are
// identical and the rail subtraction needs no rescaling.
struct NeuronConfig {
  double c_d = 8e-15;    // farads, parasitic dendrite wiring capacitance
  double c_n = 2e-15;    // farads, comparator input capacitance
  double v_theta = 0.2;  // volts, comparator threshold
  double v_dd = 1.0;     // volts, supply
  TimingFrame frame{};
  // Optional settling correction for a resistive (non-ideal) source: the
  // delivered charge for on-time W becomes I * tau * (1 - exp(-W / tau)).
  // 0 disables it (ideal current source, the reference model).
  double settling_tau = 0.0;
};
void validate(const NeuronConfig& cfg);

struct ChargeContribution {
  double width = 0.0;    // seconds of on-time
  double current = 0.0;  // amperes while on
};

// Q = sum of width * current over all contributions, Neumaier-compensated.
// Negative width or current -> DomainError.
double accumulate_charge(std::span<const ChargeContribution> contributions);

// Dendrite voltage at the end of the input period: Q / (c_d + c_n).
double mac_voltage(double charge, const NeuronConfig& cfg);

// Ramp current that spans [0, v_theta] over exactly t_out: c_n * v_theta / t_out.
double vpc_ramp_current(const NeuronConfig& cfg);

// The conversion stage's ramp source.
SwitchedCurrentSource vpc_source(const NeuronConfig& cfg);

struct VpcResult {
  double width = 0.0;
  bool saturated = false;
};

// Output width (v_mac / v_theta) * t_out, clamped to [0, t_out]. Charge
// beyond (c_d + c_n) * v_theta is outside the linear range: the node is
// already past threshold when the ramp starts, so the width clamps at
// t_out and the result is flagged saturated. v_mac equal to v_theta is the
// top of the valid range, not saturation.
VpcResult vpc_output_width(double v_mac, const NeuronConfig& cfg);

// Pulse-logic rectifier: max(w_plus - w_minus, 0).
double relu_combine(double w_plus, double w_minus);

struct RailState {
  double charge = 0.0;  // coulombs accumulated over the input period
  double v_mac = 0.0;   // charge / (c_d + c_n); not clamped at saturation
  bool saturated = false;
};

struct NeuronOutput {
  double w_plus = 0.0;
  double w_minus = 0.0;
  double w_relu = 0.0;  // max(w_plus - w_minus, 0)
  RailState plus;
  RailState minus;

  // Either rail clamped; the subtraction result is unreliable in that case.
  bool saturated() const { return plus.saturated || minus.saturated; }
};

// Full single-neuron pipeline. Each synapse feeds both rails: its on-time
// at the input-high current and the rest of the input period at the
// input-low (leakage) current. Per rail: charge accumulation, dendrite
// voltage, voltage-to-pulse conversion; then rectified rail subtraction.
// Input/synapse length mismatch or a width outside the frame -> DomainError.
NeuronOutput simulate_neuron(std::span<const PwmSignal> inputs,
                             std::span<const BinarySynapseUnit> synapses,
                             const SubthresholdParams& dev,
                             const NeuronConfig& cfg);

// Normalized gain of the ideal unsaturated pipeline: output width per unit
// of sum(w_i * width_i / t_in), divided by t_out. Equals
// on_current * t_in / ((c_d + c_n) * v_theta).
double ideal_gain(const SubthresholdParams& dev, const NeuronConfig& cfg);

}  // namespace tdpwm
