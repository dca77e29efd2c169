// Copyright (C) 2026 tdpwm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "tdpwm/neuron.hpp"

namespace tdpwm {

template <typename T>
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> data;  // row-major

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, T fill = T{})
      : rows(r), cols(c), data(r * c, fill) {}

  T& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const T& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  bool operator==(const Matrix&) const = default;
};

using WeightMatrix = Matrix<std::int8_t>;  // entries in {+1, -1}
using RealMatrix = Matrix<double>;

// Deterministic sign binarization; zero maps to +1. Non-finite entries ->
// DomainError.
WeightMatrix binarize_weights(const RealMatrix& m);

// One layer: n_neurons x n_inputs weight matrix (row j holds neuron j's
// weights), plus the neuron and device parameters shared by the array.
struct LayerSpec {
  WeightMatrix weights;
  NeuronConfig neuron_cfg{};
  SubthresholdParams device_params{};

  std::size_t n_inputs() const { return weights.cols; }
  std::size_t n_neurons() const { return weights.rows; }
};
void validate(const LayerSpec& spec);

// Instantiated synapse array: one unit per (neuron, input) with sampled
// variation multipliers. Units are immutable after construction; forward
// passes are side-effect free.
struct Layer {
  LayerSpec spec;
  std::vector<BinarySynapseUnit> units;  // [neuron * n_inputs + input]

  std::span<const BinarySynapseUnit> row(std::size_t neuron) const {
    return {units.data() + neuron * spec.n_inputs(), spec.n_inputs()};
  }
};

// Builds the synapse array. With a variation model, multipliers come from
// sample_variation on (model.seed, stream); without one they are unity.
Layer build_layer(const LayerSpec& spec,
                  const std::optional<VariationModel>& variation = std::nullopt,
                  std::uint64_t stream = 0);

// One output pulse per neuron. Length mismatch or a width beyond t_in ->
// DomainError.
std::vector<PwmSignal> forward_layer(const Layer& layer,
                                     std::span<const PwmSignal> inputs);

// Same pass, keeping rail states for analysis and energy accounting.
std::vector<NeuronOutput> forward_layer_detailed(
    const Layer& layer, std::span<const PwmSignal> inputs);

// Layers chain by pulse width alone, so layer k's neuron count must equal
// layer k+1's input count and layer k's t_out must equal layer k+1's t_in.
struct NetworkSpec {
  std::vector<LayerSpec> layers;
};
void validate(const NetworkSpec& spec);

struct Network {
  std::vector<Layer> layers;
};

// Builds every layer; layer k samples variation substream k.
Network build_network(const NetworkSpec& spec,
                      const std::optional<VariationModel>& variation = std::nullopt);

// Encodes real inputs against the first layer's input period, chains the
// layers, and decodes the final widths against the last layer's output
// period.
std::vector<double> forward_network(const Network& net,
                                    std::span<const double> input);

// Same pass, also reporting the fraction of saturated neurons per layer.
// Signals are never rescaled between layers; the saturation rate is the
// tool for spotting a network whose activations run out of range.
struct ForwardResult {
  std::vector<double> output;
  std::vector<double> layer_saturation_rate;
};
ForwardResult forward_network_detailed(const Network& net,
                                       std::span<const double> input);

// Plain-text weight file: optional '#' comment lines, then a "rows cols"
// header, then one row of +1/-1 tokens per line. Round-trips exactly.
WeightMatrix load_weights(const std::filesystem::path& path);
void save_weights(const WeightMatrix& m, const std::filesystem::path& path);

}  // namespace tdpwm
