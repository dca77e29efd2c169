// Copyright (C) 2026 tdpwm authors
// SPDX-License-Identifier: Apache-2.0
#include "tdpwm/neuron.hpp"

#include <algorithm>
#include <cmath>

namespace tdpwm {

void validate(const NeuronConfig& cfg) {
  if (!(cfg.c_d >= 0.0) || !std::isfinite(cfg.c_d))
    throw ConfigError("neuron config: c_d must be >= 0");
  if (!(cfg.c_n > 0.0) || !std::isfinite(cfg.c_n))
    throw ConfigError("neuron config: c_n must be > 0");
  if (!(cfg.v_theta > 0.0) || !(cfg.v_theta <= cfg.v_dd))
    throw ConfigError("neuron config: v_theta must lie in (0, v_dd]");
  if (!std::isfinite(cfg.v_theta) || !std::isfinite(cfg.v_dd))
    throw ConfigError("neuron config: non-finite voltage");
  if (!(cfg.settling_tau >= 0.0) || !std::isfinite(cfg.settling_tau))
    throw ConfigError("neuron config: settling_tau must be >= 0");
  validate_frame(cfg.frame);
}

double accumulate_charge(std::span<const ChargeContribution> contributions) {
  double sum = 0.0;
  double comp = 0.0;
  for (const auto& c : contributions) {
    if (!(c.width >= 0.0))
      throw DomainError("accumulate_charge: negative on-time");
    if (!(c.current >= 0.0))
      throw DomainError("accumulate_charge: negative current");
    const double term = c.width * c.current;
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

double mac_voltage(double charge, const NeuronConfig& cfg) {
  if (!(charge >= 0.0)) throw DomainError("mac_voltage: negative charge");
  return charge / (cfg.c_d + cfg.c_n);
}

double vpc_ramp_current(const NeuronConfig& cfg) {
  return cfg.c_n * cfg.v_theta / cfg.frame.t_out;
}

SwitchedCurrentSource vpc_source(const NeuronConfig& cfg) {
  return SwitchedCurrentSource{vpc_ramp_current(cfg)};
}

VpcResult vpc_output_width(double v_mac, const NeuronConfig& cfg) {
  if (!(v_mac >= 0.0)) throw DomainError("vpc_output_width: negative voltage");
  const double t_out = cfg.frame.t_out;
  const bool saturated = v_mac > cfg.v_theta;
  const double width =
      std::clamp(v_mac / cfg.v_theta * t_out, 0.0, t_out);
  return {width, saturated};
}

double relu_combine(double w_plus, double w_minus) {
  if (!(w_plus >= 0.0) || !(w_minus >= 0.0))
    throw DomainError("relu_combine: negative pulse width");
  return std::max(w_plus - w_minus, 0.0);
}

namespace {

// Charge delivered over on-time w. With a settling time constant the
// effective on-time shortens to tau * (1 - exp(-w / tau)).
double effective_on_time(double w, double tau) {
  if (tau <= 0.0 || w <= 0.0) return w;
  return tau * -std::expm1(-w / tau);
}

}  // namespace

NeuronOutput simulate_neuron(std::span<const PwmSignal> inputs,
                             std::span<const BinarySynapseUnit> synapses,
                             const SubthresholdParams& dev,
                             const NeuronConfig& cfg) {
  if (inputs.size() != synapses.size())
    throw DomainError("simulate_neuron: input/synapse count mismatch");
  validate(cfg);
  validate(dev);

  const double t_in = cfg.frame.t_in;
  std::vector<ChargeContribution> plus;
  std::vector<ChargeContribution> minus;
  plus.reserve(2 * inputs.size());
  minus.reserve(2 * inputs.size());

  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const double w = inputs[i].width;
    if (!(w >= 0.0) || w > t_in)
      throw DomainError("simulate_neuron: input width outside [0, t_in]");
    const RailCurrents on = bsu_currents(synapses[i], dev, true);
    const RailCurrents off = bsu_currents(synapses[i], dev, false);
    const double t_on = effective_on_time(w, cfg.settling_tau);
    const double t_off = effective_on_time(t_in - w, cfg.settling_tau);
    plus.push_back({t_on, on.plus});
    plus.push_back({t_off, off.plus});
    minus.push_back({t_on, on.minus});
    minus.push_back({t_off, off.minus});
  }

  NeuronOutput out;
  out.plus.charge = accumulate_charge(plus);
  out.minus.charge = accumulate_charge(minus);
  out.plus.v_mac = mac_voltage(out.plus.charge, cfg);
  out.minus.v_mac = mac_voltage(out.minus.charge, cfg);

  const VpcResult vp = vpc_output_width(out.plus.v_mac, cfg);
  const VpcResult vm = vpc_output_width(out.minus.v_mac, cfg);
  out.plus.saturated = vp.saturated;
  out.minus.saturated = vm.saturated;
  out.w_plus = vp.width;
  out.w_minus = vm.width;
  out.w_relu = relu_combine(out.w_plus, out.w_minus);
  return out;
}

double ideal_gain(const SubthresholdParams& dev, const NeuronConfig& cfg) {
  validate(cfg);
  validate(dev);
  return on_current(dev) * cfg.frame.t_in / ((cfg.c_d + cfg.c_n) * cfg.v_theta);
}

}  // namespace tdpwm
