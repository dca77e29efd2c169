// Copyright (C) 2026 tdpwm authors
// SPDX-License-Identifier: Apache-2.0
#include "tdpwm/device.hpp"

#include <cmath>

namespace tdpwm {

void validate(const SwitchedCurrentSource& scs) {
  if (!(scs.nominal_current >= 0.0) || !std::isfinite(scs.nominal_current))
    throw ConfigError("switched current source: nominal_current must be >= 0");
}

void validate(const SubthresholdParams& p) {
  if (!(p.i0 > 0.0) || !std::isfinite(p.i0))
    throw ConfigError("subthreshold params: i0 must be finite and > 0");
  if (!(p.slope_norm > 0.0) || !std::isfinite(p.slope_norm))
    throw ConfigError("subthreshold params: slope_norm must be finite and > 0");
  if (!(p.v_w >= 0.0 && p.v_w <= p.v_dd))
    throw ConfigError("subthreshold params: v_w must lie in [0, v_dd]");
  if (!std::isfinite(p.v_dd) || !(p.v_dd > 0.0))
    throw ConfigError("subthreshold params: v_dd must be finite and > 0");
}

double on_current(const SubthresholdParams& p) {
  return p.i0 * std::exp((p.v_dd - p.v_w) / p.slope_norm);
}

RailCurrents bsu_currents(const BinarySynapseUnit& u,
                          const SubthresholdParams& p, bool input_on) {
  if (u.weight != +1 && u.weight != -1)
    throw DomainError("bsu_currents: weight must be +1 or -1");

  if (p.ideal_off) {
    // Only the selected rail's on-state current exists.
    if (!input_on) return {0.0, 0.0};
    const double i_on = on_current(p);
    if (u.weight > 0) return {i_on * u.variation_plus, 0.0};
    return {0.0, i_on * u.variation_minus};
  }

  // The stored weight sets the supply-side voltages of the two rail
  // transistors; the axon level sets their common gate voltage.
  const double v_a = input_on ? p.v_w : p.v_dd;
  const double v_p_plus = u.weight > 0 ? p.v_dd : 0.0;
  const double v_p_minus = u.weight > 0 ? 0.0 : p.v_dd;
  return {
      p.i0 * std::exp((v_p_plus - v_a) / p.slope_norm) * u.variation_plus,
      p.i0 * std::exp((v_p_minus - v_a) / p.slope_norm) * u.variation_minus,
  };
}

BinarySynapseUnit program_weight(BinarySynapseUnit u, int w) {
  if (w != +1 && w != -1)
    throw DomainError("program_weight: weight must be +1 or -1");
  u.weight = w;
  return u;
}

void validate(const VariationModel& m) {
  if (!(m.sigma_vth >= 0.0) || !std::isfinite(m.sigma_vth))
    throw ConfigError("variation model: sigma_vth must be >= 0");
  if (!(m.jitter_sigma >= 0.0) || !std::isfinite(m.jitter_sigma))
    throw ConfigError("variation model: jitter_sigma must be >= 0");
}

std::vector<VariationPair> sample_variation(const VariationModel& m,
                                            double slope_norm,
                                            std::size_t n_units, Rng& rng) {
  validate(m);
  if (!(slope_norm > 0.0))
    throw DomainError("sample_variation: slope_norm must be > 0");
  if (n_units == 0)
    throw DomainError("sample_variation: n_units must be >= 1");

  std::vector<VariationPair> out(n_units);
  if (m.sigma_vth == 0.0) return out;  // all multipliers exactly 1
  for (auto& pair : out) {
    pair.plus = std::exp(rng.normal(0.0, m.sigma_vth) / slope_norm);
    pair.minus = std::exp(rng.normal(0.0, m.sigma_vth) / slope_norm);
  }
  return out;
}

std::vector<VariationPair> sample_variation(const VariationModel& m,
                                            double slope_norm,
                                            std::size_t n_units,
                                            std::uint64_t stream) {
  Rng rng(m.seed, stream);
  return sample_variation(m, slope_norm, n_units, rng);
}

}  // namespace tdpwm
