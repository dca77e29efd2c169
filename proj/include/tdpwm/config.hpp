// Copyright (C) 2026 tdpwm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tdpwm/analysis.hpp"
#include "tdpwm/energy.hpp"

namespace tdpwm {

enum class Dimension {
  time,
  voltage,
  current,
  capacitance,
  power,
  energy,
  frequency,
};

const char* dimension_name(Dimension d);

// Parses "300 ns", "0.2 V", "2.9e5 Hz" (space optional) into base SI units.
// The unit suffix is mandatory and must belong to the expected dimension;
// bare numbers are rejected so mixed ns/us/fF/pA setups cannot silently
// misparse. Throws ConfigError.
double parse_quantity(const std::string& text, Dimension expected);

// "%.17g <base unit>"; round-trips bit-exactly through parse_quantity.
std::string format_quantity(double value, Dimension d);

struct KvEntry {
  std::string key;
  std::string value;
  int line = 0;
};

struct KvSection {
  std::string name;
  std::vector<KvEntry> entries;
  int line = 0;

  const std::string* get(const std::string& key) const;
};

// Minimal "[section] / key = value / # comment" document. Config files and
// the CLI's machine-readable text reports both use it, so every emitted
// report can be re-read by the same parser.
struct KvDocument {
  std::vector<KvSection> sections;

  static KvDocument parse(const std::string& text);
  static KvDocument parse_file(const std::filesystem::path& path);
  std::string serialize() const;

  const KvSection* find(const std::string& name) const;
  KvSection& section(const std::string& name);  // get or append
  void set(const std::string& section_name, const std::string& key,
           std::string value);
};

struct EnergyConfig {
  double c_gate = 0.5e-15;  // farads; switch energy is c_gate * v_dd^2
  double p_cmp = 0.0;       // watts
  double cycle_freq = 0.0;  // hertz; 0 means "derive 1 / (t_in + t_out)"
};

struct ExperimentConfig {
  std::size_t n_trials = 10000;
  std::size_t n_inputs = 50;
  std::size_t n_neurons = 10;
  int averaging_runs = 50;
  int n_points = 41;
  std::uint64_t seed = 1;
};

// Full run configuration, loaded from a sectioned plain-text file with
// explicit unit suffixes on every physical quantity. Sections: frame,
// neuron, device, variation, energy, experiment. Unknown sections or keys
// are rejected; all type invariants are enforced at load time. Missing
// sections fall back to the documented defaults.
struct RunConfig {
  TimingFrame frame{};
  double tick = 0.0;  // quantization tick, 0 = continuous
  double c_d = 8e-15;
  double c_n = 2e-15;
  double v_theta = 0.2;
  double v_dd = 1.0;
  double settling_tau = 0.0;
  // Device section; v_dd is shared with the neuron section.
  double i0 = 1e-12;
  double v_w = 0.85;
  double slope_norm = 0.036;
  bool ideal_off = false;
  VariationModel variation{};
  EnergyConfig energy{};
  ExperimentConfig experiment{};
  bool has_energy_section = false;

  static RunConfig load(const std::filesystem::path& path);
  static RunConfig from_document(const KvDocument& doc);

  NeuronConfig neuron_config() const;
  SubthresholdParams device_params() const;
  TrialConfig trial_config() const;
  EnergyParams energy_params() const;
  double cycle_freq() const;
};

}  // namespace tdpwm
