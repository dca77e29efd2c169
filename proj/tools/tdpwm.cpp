// Copyright (C) 2026 tdpwm authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: single-neuron runs, input-output sweeps, Monte
// Carlo error experiments, network inference and energy reports, all driven
// by a unit-suffixed config file.

#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tdpwm/analysis.hpp"
#include "tdpwm/config.hpp"
#include "tdpwm/energy.hpp"
#include "tdpwm/network.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace tdpwm;

enum class Format { text, json_fmt, csv };

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Format parse_format(const std::string& name) {
  if (name == "text") return Format::text;
  if (name == "json") return Format::json_fmt;
  if (name == "csv") return Format::csv;
  throw ConfigError("unknown format '" + name + "' (expected text, json or csv)");
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::runtime_error("cannot open '" + out_path + "' for writing");
  f << text;
  if (!f.flush())
    throw std::runtime_error("write failed for '" + out_path + "'");
}

std::vector<double> parse_value_list(const std::string& list) {
  std::vector<double> out;
  std::string token;
  std::istringstream in(list);
  while (std::getline(in, token, ',')) {
    std::size_t pos = 0;
    const double v = std::stod(token, &pos);
    while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos]))) ++pos;
    if (pos != token.size())
      throw DomainError("bad number '" + token + "' in value list");
    out.push_back(v);
  }
  if (out.empty()) throw DomainError("empty value list");
  return out;
}

std::vector<double> read_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open value file '" + path + "'");
  std::vector<double> out;
  double v;
  while (in >> v) out.push_back(v);
  if (!in.eof()) throw ConfigError("bad number in value file '" + path + "'");
  if (out.empty()) throw ConfigError("value file '" + path + "' is empty");
  return out;
}

std::vector<int> parse_weight_list(const std::string& list) {
  std::vector<int> out;
  for (const double v : parse_value_list(list)) {
    if (v != 1.0 && v != -1.0)
      throw DomainError("weights must be +1 or -1");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

// One synapse row with the configured variation realization (multipliers
// sampled once from [variation], like a single fabricated device).
std::vector<BinarySynapseUnit> make_units(const std::vector<int>& weights,
                                          const RunConfig& cfg) {
  std::vector<BinarySynapseUnit> units(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i)
    units[i] = program_weight(units[i], weights[i]);
  if (cfg.variation.sigma_vth > 0.0) {
    const auto pairs =
        sample_variation(cfg.variation, cfg.slope_norm, units.size());
    for (std::size_t i = 0; i < units.size(); ++i) {
      units[i].variation_plus = pairs[i].plus;
      units[i].variation_minus = pairs[i].minus;
    }
  }
  return units;
}

void append_energy_kv(KvDocument& doc, const EnergyReport& r) {
  doc.set("energy", "e_mac", format_quantity(r.e_mac, Dimension::energy));
  doc.set("energy", "e_vpc", format_quantity(r.e_vpc, Dimension::energy));
  doc.set("energy", "e_total", format_quantity(r.e_total, Dimension::energy));
  doc.set("energy", "ops", fmt(r.ops));
  doc.set("energy", "ops_per_sec", fmt(r.ops_per_sec));
  doc.set("energy", "power", format_quantity(r.power, Dimension::power));
  doc.set("energy", "efficiency_ops_per_watt", fmt(r.efficiency));
}

json energy_json(const EnergyReport& r) {
  json e;
  e["e_mac_J"] = r.e_mac;
  e["e_vpc_J"] = r.e_vpc;
  e["e_total_J"] = r.e_total;
  e["ops"] = r.ops;
  e["ops_per_sec"] = r.ops_per_sec;
  e["power_W"] = r.power;
  e["efficiency_ops_per_watt"] = r.efficiency;
  return e;
}

void warn_if_no_energy_section(const RunConfig& cfg) {
  if (!cfg.has_energy_section)
    std::cerr << "warning: config has no [energy] section, using defaults\n";
}

int cmd_neuron(const RunConfig& cfg, const std::vector<double>& values,
               std::vector<int> weights, Format format,
               const std::string& out_path) {
  if (weights.empty()) weights.assign(values.size(), +1);
  if (weights.size() != values.size())
    throw DomainError("--weights length does not match the input count");

  std::vector<PwmSignal> inputs;
  inputs.reserve(values.size());
  for (const double x : values)
    inputs.push_back(quantize(encode_value(x, cfg.frame), cfg.tick));

  const auto units = make_units(weights, cfg);
  const NeuronConfig ncfg = cfg.neuron_config();
  const NeuronOutput out = simulate_neuron(inputs, units, cfg.device_params(), ncfg);
  warn_if_no_energy_section(cfg);
  const EnergyReport report = neuron_energy_report(
      out, inputs, units, ncfg, cfg.energy_params(), cfg.cycle_freq());

  if (format == Format::json_fmt) {
    json j;
    j["neuron"]["w_plus_s"] = out.w_plus;
    j["neuron"]["w_minus_s"] = out.w_minus;
    j["neuron"]["w_relu_s"] = out.w_relu;
    j["neuron"]["v_mac_plus_V"] = out.plus.v_mac;
    j["neuron"]["v_mac_minus_V"] = out.minus.v_mac;
    j["neuron"]["saturated"] = out.saturated();
    j["energy"] = energy_json(report);
    write_output(j.dump(2) + "\n", out_path);
    return 0;
  }

  KvDocument doc;
  doc.set("neuron", "w_plus", format_quantity(out.w_plus, Dimension::time));
  doc.set("neuron", "w_minus", format_quantity(out.w_minus, Dimension::time));
  doc.set("neuron", "w_relu", format_quantity(out.w_relu, Dimension::time));
  doc.set("neuron", "v_mac_plus", format_quantity(out.plus.v_mac, Dimension::voltage));
  doc.set("neuron", "v_mac_minus", format_quantity(out.minus.v_mac, Dimension::voltage));
  doc.set("neuron", "saturated", out.saturated() ? "true" : "false");
  append_energy_kv(doc, report);
  write_output(doc.serialize(), out_path);
  return 0;
}

int cmd_sweep(const RunConfig& cfg, int points, const std::string& out_path) {
  std::vector<int> weights(cfg.experiment.n_inputs, +1);
  const auto units = make_units(weights, cfg);
  const auto sweep =
      sweep_input_output(units, cfg.device_params(), cfg.neuron_config(),
                         cfg.variation, points, cfg.experiment.averaging_runs);

  std::string csv = "input_width_ns,mean_output_ns,std_output_ns\n";
  for (const auto& p : sweep)
    csv += fmt(p.input_width * 1e9) + "," + fmt(p.mean_output * 1e9) + "," +
           fmt(p.std_output * 1e9) + "\n";
  write_output(csv, out_path);
  return 0;
}

int cmd_montecarlo(const RunConfig& cfg, Format format,
                   const std::string& out_path) {
  const ErrorStats stats = run_error_experiment(
      cfg.trial_config(), cfg.device_params(), cfg.neuron_config());

  if (!out_path.empty()) {
    std::string csv = "trial,oracle_raw,oracle_norm,sim_norm,error_pct\n";
    for (std::size_t t = 0; t < stats.per_trial.size(); ++t) {
      const auto& r = stats.per_trial[t];
      csv += std::to_string(t) + "," + fmt(r.oracle_raw) + "," +
             fmt(r.oracle_norm) + "," + fmt(r.sim_norm) + "," +
             fmt(r.error_pct) + "\n";
    }
    write_output(csv, out_path);
  }

  if (format == Format::json_fmt) {
    json j;
    j["error_stats"]["n_trials"] = cfg.experiment.n_trials;
    j["error_stats"]["n_inputs"] = cfg.experiment.n_inputs;
    j["error_stats"]["mean_abs_error_pct"] = stats.mean_abs_error_pct;
    j["error_stats"]["max_abs_error_pct"] = stats.max_abs_error_pct;
    j["error_stats"]["error_std_s"] = stats.error_std_s;
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  KvDocument doc;
  doc.set("error_stats", "n_trials", std::to_string(cfg.experiment.n_trials));
  doc.set("error_stats", "n_inputs", std::to_string(cfg.experiment.n_inputs));
  doc.set("error_stats", "mean_abs_error_pct", fmt(stats.mean_abs_error_pct));
  doc.set("error_stats", "max_abs_error_pct", fmt(stats.max_abs_error_pct));
  doc.set("error_stats", "error_std", format_quantity(stats.error_std_s, Dimension::time));
  std::cout << doc.serialize();
  return 0;
}

int cmd_infer(const RunConfig& cfg, const std::vector<std::string>& weight_paths,
              const std::string& input_path, Format format,
              const std::string& out_path) {
  NetworkSpec spec;
  for (const auto& path : weight_paths) {
    LayerSpec layer;
    layer.weights = load_weights(path);
    layer.neuron_cfg = cfg.neuron_config();
    layer.device_params = cfg.device_params();
    spec.layers.push_back(std::move(layer));
  }

  std::optional<VariationModel> variation;
  if (cfg.variation.sigma_vth > 0.0) variation = cfg.variation;
  const Network net = build_network(spec, variation);

  std::vector<double> input = read_value_file(input_path);
  if (cfg.tick > 0.0) {
    // Quantize at the encoding boundary; widths stay continuous inside.
    for (double& x : input)
      x = decode_width(quantize(encode_value(x, cfg.frame), cfg.tick),
                       cfg.frame, FrameSide::input);
  }
  const ForwardResult result = forward_network_detailed(net, input);

  if (format == Format::json_fmt) {
    json j;
    j["output"] = result.output;
    j["layer_saturation_rate"] = result.layer_saturation_rate;
    write_output(j.dump(2) + "\n", out_path);
    return 0;
  }
  KvDocument doc;
  for (std::size_t i = 0; i < result.output.size(); ++i)
    doc.set("output", "y" + std::to_string(i), fmt(result.output[i]));
  for (std::size_t k = 0; k < result.layer_saturation_rate.size(); ++k)
    doc.set("saturation", "layer" + std::to_string(k),
            fmt(result.layer_saturation_rate[k]));
  write_output(doc.serialize(), out_path);
  return 0;
}

int cmd_energy(const RunConfig& cfg, double activity, Format format,
               const std::string& out_path) {
  if (!(activity >= 0.0 && activity <= 1.0))
    throw DomainError("--activity must lie in [0, 1]");
  warn_if_no_energy_section(cfg);

  // Representative array: configured dimensions, seeded random weights,
  // all inputs at the requested activity level.
  LayerSpec layer;
  layer.weights = WeightMatrix(cfg.experiment.n_neurons, cfg.experiment.n_inputs);
  Rng rng(cfg.experiment.seed, 0);
  for (auto& w : layer.weights.data) w = static_cast<std::int8_t>(rng.sign());
  layer.neuron_cfg = cfg.neuron_config();
  layer.device_params = cfg.device_params();

  NetworkSpec spec;
  spec.layers.push_back(std::move(layer));
  std::optional<VariationModel> variation;
  if (cfg.variation.sigma_vth > 0.0) variation = cfg.variation;
  const Network net = build_network(spec, variation);

  const std::vector<double> input(cfg.experiment.n_inputs, activity);
  const EnergyReport report =
      inference_energy_report(net, input, cfg.energy_params(), cfg.cycle_freq());

  if (format == Format::json_fmt) {
    json j;
    j["energy"] = energy_json(report);
    write_output(j.dump(2) + "\n", out_path);
    return 0;
  }
  KvDocument doc;
  append_energy_kv(doc, report);
  write_output(doc.serialize(), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Behavioral simulator for PWM time-domain analog weighted-sum hardware"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string format_name = "text";
  std::optional<std::uint64_t> seed_override;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "config file")->required();
    sub->add_option("--out", out_path, "output file (default: stdout)");
    sub->add_option("--format", format_name, "text | json | csv");
    sub->add_option("--seed", seed_override,
                    "override the [variation] and [experiment] seeds");
  };

  auto* neuron = app.add_subcommand("neuron", "simulate a single dual-rail neuron");
  std::string inputs_list, inputs_file, weights_list;
  add_common(neuron);
  auto* opt_list = neuron->add_option("--inputs", inputs_list,
                                      "comma-separated input values in [0,1]");
  auto* opt_file = neuron->add_option("--inputs-file", inputs_file,
                                      "file of whitespace-separated input values");
  opt_list->excludes(opt_file);
  neuron->add_option("--weights", weights_list, "comma-separated +1/-1 weights");

  auto* sweep = app.add_subcommand("sweep", "input-output characteristic sweep (CSV)");
  int sweep_points = 0;
  add_common(sweep);
  sweep->add_option("--points", sweep_points, "number of sweep points");

  auto* mc = app.add_subcommand("montecarlo", "random weight/input error experiment");
  add_common(mc);

  auto* infer = app.add_subcommand("infer", "network inference over weight files");
  std::vector<std::string> weight_paths;
  std::string input_path;
  add_common(infer);
  infer->add_option("--weights", weight_paths, "weight file, one per layer")
      ->required();
  infer->add_option("--input", input_path, "input vector file")->required();

  auto* energy = app.add_subcommand("energy", "energy/throughput report for the configured array");
  double activity = 0.5;
  add_common(energy);
  energy->add_option("--activity", activity, "uniform input level in [0,1] (default 0.5)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    RunConfig cfg = RunConfig::load(config_path);
    if (seed_override) {
      cfg.variation.seed = *seed_override;
      cfg.experiment.seed = *seed_override;
    }
    const Format format = parse_format(format_name);

    if (*neuron) {
      std::vector<double> values;
      if (!inputs_list.empty())
        values = parse_value_list(inputs_list);
      else if (!inputs_file.empty())
        values = read_value_file(inputs_file);
      else
        values.assign(cfg.experiment.n_inputs, 0.0);
      std::vector<int> weights;
      if (!weights_list.empty()) weights = parse_weight_list(weights_list);
      return cmd_neuron(cfg, values, std::move(weights), format, out_path);
    }
    if (*sweep) {
      const int points = sweep_points > 0 ? sweep_points : cfg.experiment.n_points;
      return cmd_sweep(cfg, points, out_path);
    }
    if (*mc) return cmd_montecarlo(cfg, format, out_path);
    if (*infer) return cmd_infer(cfg, weight_paths, input_path, format, out_path);
    if (*energy) return cmd_energy(cfg, activity, format, out_path);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
