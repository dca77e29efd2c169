// Copyright (C) 2026 tdpwm authors
// SPDX-License-Identifier: Apache-2.0
#include "tdpwm/energy.hpp"

#include <cmath>

namespace tdpwm {

void validate(const EnergyParams& p) {
  if (!(p.e_switch_mac >= 0.0) || !(p.e_switch_vpc >= 0.0) || !(p.p_cmp >= 0.0))
    throw ConfigError("energy params: all values must be >= 0");
  if (!std::isfinite(p.e_switch_mac) || !std::isfinite(p.e_switch_vpc) ||
      !std::isfinite(p.p_cmp))
    throw ConfigError("energy params: non-finite value");
}

double charge_energy(double c, double v_c, double v_dd) {
  if (!(c >= 0.0) || !(v_c >= 0.0) || !(v_dd >= 0.0))
    throw DomainError("charge_energy: negative argument");
  return c * v_c * v_dd;
}

double mac_energy(const NeuronConfig& cfg, double v_mac,
                  std::size_t n_active_inputs, const EnergyParams& p) {
  return charge_energy(cfg.c_d, v_mac, cfg.v_dd) +
         static_cast<double>(n_active_inputs) * p.e_switch_mac;
}

double vpc_energy(const NeuronConfig& cfg, double v_mac,
                  const EnergyParams& p) {
  const double t_window = cfg.frame.t_in + cfg.frame.t_out;
  return charge_energy(cfg.c_n, v_mac + cfg.v_theta, cfg.v_dd) +
         p.e_switch_vpc + p.p_cmp * t_window;
}

double throughput_ops(double n_synapses, double ops_per_synapse,
                      double n_neurons, double freq) {
  if (!(n_synapses >= 0.0) || !(ops_per_synapse >= 0.0) ||
      !(n_neurons >= 0.0) || !(freq >= 0.0))
    throw DomainError("throughput_ops: negative argument");
  return n_synapses * ops_per_synapse * n_neurons * freq;
}

double efficiency(double ops_per_sec, double power) {
  if (!(power > 0.0)) throw DomainError("efficiency: power must be > 0");
  if (!(ops_per_sec >= 0.0)) throw DomainError("efficiency: negative rate");
  return ops_per_sec / power;
}

namespace {

struct RailActivity {
  std::size_t plus = 0;
  std::size_t minus = 0;
};

// An input counts as active when its pulse has nonzero width; its switch
// energy is attributed to the rail its weight selects.
RailActivity count_active(std::span<const PwmSignal> inputs,
                          std::span<const BinarySynapseUnit> synapses) {
  RailActivity n;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i].width <= 0.0) continue;
    if (synapses[i].weight > 0)
      ++n.plus;
    else
      ++n.minus;
  }
  return n;
}

struct EnergyAccumulator {
  double e_mac = 0.0;
  double e_vpc = 0.0;
  double ops = 0.0;

  void add_neuron(const NeuronOutput& out, std::span<const PwmSignal> inputs,
                  std::span<const BinarySynapseUnit> synapses,
                  const NeuronConfig& cfg, const EnergyParams& p) {
    const RailActivity n = count_active(inputs, synapses);
    e_mac += mac_energy(cfg, out.plus.v_mac, n.plus, p) +
             mac_energy(cfg, out.minus.v_mac, n.minus, p);
    e_vpc += vpc_energy(cfg, out.plus.v_mac, p) +
             vpc_energy(cfg, out.minus.v_mac, p);
    ops += 2.0 * static_cast<double>(inputs.size());
  }

  EnergyReport finish(double cycle_freq) const {
    if (!(cycle_freq > 0.0))
      throw DomainError("energy report: cycle frequency must be > 0");
    EnergyReport r;
    r.e_mac = e_mac;
    r.e_vpc = e_vpc;
    r.e_total = e_mac + e_vpc;
    r.ops = ops;
    r.ops_per_sec = ops * cycle_freq;
    r.power = r.e_total * cycle_freq;
    r.efficiency = efficiency(r.ops_per_sec, r.power);
    return r;
  }
};

}  // namespace

EnergyReport neuron_energy_report(const NeuronOutput& out,
                                  std::span<const PwmSignal> inputs,
                                  std::span<const BinarySynapseUnit> synapses,
                                  const NeuronConfig& cfg,
                                  const EnergyParams& p, double cycle_freq) {
  if (inputs.size() != synapses.size())
    throw DomainError("neuron_energy_report: input/synapse count mismatch");
  validate(p);
  EnergyAccumulator acc;
  acc.add_neuron(out, inputs, synapses, cfg, p);
  return acc.finish(cycle_freq);
}

EnergyReport inference_energy_report(const Network& net,
                                     std::span<const double> input,
                                     const EnergyParams& p, double cycle_freq) {
  if (net.layers.empty())
    throw ConfigError("inference_energy_report: empty network");
  if (input.size() != net.layers.front().spec.n_inputs())
    throw DomainError("inference_energy_report: input size mismatch");
  validate(p);

  std::vector<PwmSignal> widths;
  widths.reserve(input.size());
  for (const double x : input)
    widths.push_back(encode_value(x, net.layers.front().spec.neuron_cfg.frame));

  EnergyAccumulator acc;
  for (const auto& layer : net.layers) {
    const auto detailed = forward_layer_detailed(layer, widths);
    for (std::size_t j = 0; j < detailed.size(); ++j)
      acc.add_neuron(detailed[j], widths, layer.row(j),
                     layer.spec.neuron_cfg, p);
    widths.clear();
    widths.reserve(detailed.size());
    for (const auto& n : detailed) widths.push_back(PwmSignal{n.w_relu});
  }
  return acc.finish(cycle_freq);
}

}  // namespace tdpwm
