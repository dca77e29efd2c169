// Copyright (C) 2026 tdpwm authors
// SPDX-License-Identifier: Apache-2.0
#include "tdpwm/network.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace tdpwm {

WeightMatrix binarize_weights(const RealMatrix& m) {
  WeightMatrix out(m.rows, m.cols);
  for (std::size_t i = 0; i < m.data.size(); ++i) {
    const double v = m.data[i];
    if (!std::isfinite(v))
      throw DomainError("binarize_weights: non-finite entry");
    out.data[i] = v < 0.0 ? -1 : +1;
  }
  return out;
}

void validate(const LayerSpec& spec) {
  if (spec.weights.rows == 0 || spec.weights.cols == 0)
    throw ConfigError("layer spec: empty weight matrix");
  if (spec.weights.data.size() != spec.weights.rows * spec.weights.cols)
    throw ConfigError("layer spec: weight matrix storage size mismatch");
  for (const auto w : spec.weights.data)
    if (w != +1 && w != -1)
      throw ConfigError("layer spec: weights must be +1 or -1");
  validate(spec.neuron_cfg);
  validate(spec.device_params);
}

Layer build_layer(const LayerSpec& spec,
                  const std::optional<VariationModel>& variation,
                  std::uint64_t stream) {
  validate(spec);
  Layer layer{spec, {}};
  const std::size_t n = spec.n_neurons() * spec.n_inputs();
  layer.units.resize(n);

  std::vector<VariationPair> pairs;
  if (variation) {
    pairs = sample_variation(*variation, spec.device_params.slope_norm, n,
                             stream);
  }
  for (std::size_t j = 0; j < spec.n_neurons(); ++j) {
    for (std::size_t i = 0; i < spec.n_inputs(); ++i) {
      auto& unit = layer.units[j * spec.n_inputs() + i];
      unit.weight = spec.weights.at(j, i);
      if (variation) {
        unit.variation_plus = pairs[j * spec.n_inputs() + i].plus;
        unit.variation_minus = pairs[j * spec.n_inputs() + i].minus;
      }
    }
  }
  return layer;
}

std::vector<NeuronOutput> forward_layer_detailed(
    const Layer& layer, std::span<const PwmSignal> inputs) {
  if (inputs.size() != layer.spec.n_inputs())
    throw DomainError("forward_layer: input count mismatch");
  std::vector<NeuronOutput> out;
  out.reserve(layer.spec.n_neurons());
  for (std::size_t j = 0; j < layer.spec.n_neurons(); ++j)
    out.push_back(simulate_neuron(inputs, layer.row(j),
                                  layer.spec.device_params,
                                  layer.spec.neuron_cfg));
  return out;
}

std::vector<PwmSignal> forward_layer(const Layer& layer,
                                     std::span<const PwmSignal> inputs) {
  const auto detailed = forward_layer_detailed(layer, inputs);
  std::vector<PwmSignal> widths;
  widths.reserve(detailed.size());
  for (const auto& n : detailed) widths.push_back(PwmSignal{n.w_relu});
  return widths;
}

void validate(const NetworkSpec& spec) {
  if (spec.layers.empty()) throw ConfigError("network spec: no layers");
  for (const auto& layer : spec.layers) validate(layer);
  for (std::size_t k = 0; k + 1 < spec.layers.size(); ++k) {
    if (spec.layers[k].n_neurons() != spec.layers[k + 1].n_inputs())
      throw ConfigError("network spec: layer width mismatch between layers " +
                        std::to_string(k) + " and " + std::to_string(k + 1));
    if (spec.layers[k].neuron_cfg.frame.t_out !=
        spec.layers[k + 1].neuron_cfg.frame.t_in)
      throw ConfigError("network spec: frame mismatch between layers " +
                        std::to_string(k) + " and " + std::to_string(k + 1));
  }
}

Network build_network(const NetworkSpec& spec,
                      const std::optional<VariationModel>& variation) {
  validate(spec);
  Network net;
  net.layers.reserve(spec.layers.size());
  for (std::size_t k = 0; k < spec.layers.size(); ++k)
    net.layers.push_back(build_layer(spec.layers[k], variation, k));
  return net;
}

ForwardResult forward_network_detailed(const Network& net,
                                       std::span<const double> input) {
  if (net.layers.empty()) throw ConfigError("forward_network: empty network");
  const auto& first = net.layers.front().spec;
  if (input.size() != first.n_inputs())
    throw DomainError("forward_network: input size mismatch");

  std::vector<PwmSignal> widths;
  widths.reserve(input.size());
  for (const double x : input)
    widths.push_back(encode_value(x, first.neuron_cfg.frame));

  ForwardResult result;
  result.layer_saturation_rate.reserve(net.layers.size());
  for (const auto& layer : net.layers) {
    const auto detailed = forward_layer_detailed(layer, widths);
    std::size_t saturated = 0;
    widths.clear();
    widths.reserve(detailed.size());
    for (const auto& n : detailed) {
      if (n.saturated()) ++saturated;
      widths.push_back(PwmSignal{n.w_relu});
    }
    result.layer_saturation_rate.push_back(
        static_cast<double>(saturated) / static_cast<double>(detailed.size()));
  }

  const auto& last = net.layers.back().spec;
  result.output.reserve(widths.size());
  for (const auto& w : widths)
    result.output.push_back(
        decode_width(w, last.neuron_cfg.frame, FrameSide::output));
  return result;
}

std::vector<double> forward_network(const Network& net,
                                    std::span<const double> input) {
  return forward_network_detailed(net, input).output;
}

namespace {

int8_t parse_weight_token(const std::string& token, int line, int col) {
  if (token == "+1" || token == "1") return +1;
  if (token == "-1") return -1;
  throw ParseError("weight file: expected +1 or -1, got '" + token + "'", line,
                   col);
}

}  // namespace

WeightMatrix load_weights(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("weight file: cannot open '" + path.string() + "'");

  WeightMatrix m;
  bool have_header = false;
  std::size_t rows_read = 0;
  int line_no = 0;

  for (std::string line; std::getline(in, line); ) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    std::istringstream ls(line);
    if (!have_header) {
      long long r = 0, c = 0;
      if (!(ls >> r >> c) || r <= 0 || c <= 0)
        throw ParseError("weight file: expected 'rows cols' header", line_no, 1);
      std::string extra;
      if (ls >> extra)
        throw ParseError("weight file: trailing token after header", line_no, 1);
      m = WeightMatrix(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
      have_header = true;
      continue;
    }

    if (rows_read == m.rows)
      throw ParseError("weight file: more rows than the header declares",
                       line_no, 1);
    std::size_t col_count = 0;
    std::string token;
    while (ls >> token) {
      if (col_count == m.cols)
        throw ParseError("weight file: row has too many entries", line_no, 1);
      const auto after = ls.tellg();
      const int col_pos = after < 0
                              ? static_cast<int>(line.size() - token.size()) + 1
                              : static_cast<int>(after) -
                                    static_cast<int>(token.size()) + 1;
      m.at(rows_read, col_count) = parse_weight_token(token, line_no, col_pos);
      ++col_count;
    }
    if (col_count != m.cols)
      throw ParseError("weight file: row has " + std::to_string(col_count) +
                           " entries, header declares " + std::to_string(m.cols),
                       line_no, 1);
    ++rows_read;
  }

  if (!have_header) throw ConfigError("weight file: empty file");
  if (rows_read != m.rows)
    throw ConfigError("weight file: header declares " + std::to_string(m.rows) +
                      " rows, found " + std::to_string(rows_read));
  return m;
}

void save_weights(const WeightMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw ConfigError("weight file: cannot write '" + path.string() + "'");
  out << m.rows << ' ' << m.cols << '\n';
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) {
      if (c != 0) out << ' ';
      out << (m.at(r, c) > 0 ? "+1" : "-1");
    }
    out << '\n';
  }
  if (!out.flush())
    throw ConfigError("weight file: write failed for '" + path.string() + "'");
}

}  // namespace tdpwm
