// Copyright (C) 2026 tdpwm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "tdpwm/network.hpp"

namespace tdpwm {

// Per-operation energy parameters. Switch energies cover the gate charging
// of one switched current source; the comparator draws a constant bias
// power over the whole t_in + t_out window.
struct EnergyParams {
  double e_switch_mac = 0.0;  // joules per input switching event
  double e_switch_vpc = 0.0;  // joules per conversion-ramp switching event
  double p_cmp = 0.0;         // watts of comparator static power
};
void validate(const EnergyParams& p);

struct EnergyReport {
  double e_mac = 0.0;        // joules per inference, accumulation side
  double e_vpc = 0.0;        // joules per inference, conversion side
  double e_total = 0.0;      // e_mac + e_vpc
  double ops = 0.0;          // operations per inference (2 per synapse)
  double ops_per_sec = 0.0;  // ops * cycle frequency
  double power = 0.0;        // watts, e_total * cycle frequency
  double efficiency = 0.0;   // ops_per_sec / power
};

// Energy of charging capacitance c to v_c from supply v_dd: c * v_c * v_dd.
double charge_energy(double c, double v_c, double v_dd);

// Accumulation-side energy of one rail:
// c_d * v_mac * v_dd + n_active_inputs * e_switch_mac.
double mac_energy(const NeuronConfig& cfg, double v_mac,
                  std::size_t n_active_inputs, const EnergyParams& p);

// Conversion-side energy of one rail:
// c_n * (v_mac + v_theta) * v_dd + e_switch_vpc + p_cmp * (t_in + t_out).
double vpc_energy(const NeuronConfig& cfg, double v_mac,
                  const EnergyParams& p);

// Array throughput: n_synapses * ops_per_synapse * n_neurons * freq.
double throughput_ops(double n_synapses, double ops_per_synapse,
                      double n_neurons, double freq);

// ops_per_sec / power; power <= 0 -> DomainError.
double efficiency(double ops_per_sec, double power);

// Energy report for one neuron evaluation (both rails), with operations
// counted as 2 per synapse. Active inputs are those with nonzero width,
// attributed to the rail their weight selects.
EnergyReport neuron_energy_report(const NeuronOutput& out,
                                  std::span<const PwmSignal> inputs,
                                  std::span<const BinarySynapseUnit> synapses,
                                  const NeuronConfig& cfg,
                                  const EnergyParams& p, double cycle_freq);

// Full-network report for one inference: mac and vpc energies summed over
// every rail, neuron and layer. cycle_freq is the hardware cycle rate (one
// inference per cycle); it is an independent measured parameter, not
// derived from t_in + t_out. cycle_freq <= 0 -> DomainError.
EnergyReport inference_energy_report(const Network& net,
                                     std::span<const double> input,
                                     const EnergyParams& p, double cycle_freq);

}  // namespace tdpwm
