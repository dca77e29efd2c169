// Copyright (C) 2026 tdpwm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tdpwm/error.hpp"
#include "tdpwm/rng.hpp"

namespace tdpwm {

// A current source gated by a binary level.
struct SwitchedCurrentSource {
  double nominal_current = 0.0;  // amperes while the gate is on

  double output(bool on) const { return on ? nominal_current : 0.0; }
};
void validate(const SwitchedCurrentSource& scs);

// Subthreshold pMOS parameters shared by every synapse unit of an array.
// Drain current follows i0 * exp((v_p - v_a) / slope_norm). slope_norm is
// the exponential slope normalization, about n*U_T = 36 mV at room
// temperature; setting it to 1 V recovers a unit-slope exponential.
struct SubthresholdParams {
  double i0 = 1e-12;         // amperes
  double v_dd = 1.0;         // volts
  double v_w = 0.85;         // volts, axon gate voltage while the input is high
  double slope_norm = 0.036; // volts
  // When true, off-state leakage and the unselected rail are exactly zero.
  // Used for comparisons against the ideal closed-form model.
  bool ideal_off = false;
};
void validate(const SubthresholdParams& p);

// On-state current of the rail selected by the weight: i0 * exp((v_dd - v_w) / slope_norm).
double on_current(const SubthresholdParams& p);

// One SRAM synapse cell: a binary weight plus one subthreshold transistor
// per dendrite rail. Variation multipliers model per-transistor threshold
// mismatch; they are properties of the fabricated device and stay fixed
// across weight programming.
struct BinarySynapseUnit {
  int weight = +1;  // +1 or -1
  double variation_plus = 1.0;
  double variation_minus = 1.0;
};

struct RailCurrents {
  double plus = 0.0;   // amperes into the positive-weight rail
  double minus = 0.0;  // amperes into the negative-weight rail
};

// Drain currents seen by the two rails for one input level. A positive
// weight puts the supply on the plus-rail transistor, so that rail carries
// the on-current while the input is high and the bare leakage i0 while it
// is low; the unselected rail carries a deeply suppressed current in both
// states. Mirror behavior for negative weights.
RailCurrents bsu_currents(const BinarySynapseUnit& u,
                          const SubthresholdParams& p, bool input_on);

// Returns a copy with the weight reprogrammed. Variation multipliers are
// unchanged. w outside {+1, -1} -> DomainError.
BinarySynapseUnit program_weight(BinarySynapseUnit u, int w);

// Stochastic device non-idealities.
struct VariationModel {
  double sigma_vth = 0.0;     // volts, std dev of threshold-voltage mismatch
  double jitter_sigma = 0.0;  // seconds, std dev of output-edge timing jitter
  std::uint64_t seed = 1;
};
void validate(const VariationModel& m);

struct VariationPair {
  double plus = 1.0;
  double minus = 1.0;
};

// Per-unit current multipliers exp(delta / slope_norm) with
// delta ~ Normal(0, sigma_vth), one independent draw per transistor
// (two per unit). Deterministic given (m.seed, stream).
std::vector<VariationPair> sample_variation(const VariationModel& m,
                                            double slope_norm,
                                            std::size_t n_units,
                                            std::uint64_t stream = 0);

// Same law, drawing from a caller-provided generator.
std::vector<VariationPair> sample_variation(const VariationModel& m,
                                            double slope_norm,
                                            std::size_t n_units, Rng& rng);

}  // namespace tdpwm
