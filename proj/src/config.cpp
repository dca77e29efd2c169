// Copyright (C) 2026 tdpwm authors
// SPDX-License-Identifier: Apache-2.0
#include "tdpwm/config.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace tdpwm {

namespace {

struct UnitDef {
  const char* suffix;
  Dimension dim;
  double factor;
};

constexpr UnitDef kUnits[] = {
    {"s", Dimension::time, 1.0},
    {"ms", Dimension::time, 1e-3},
    {"us", Dimension::time, 1e-6},
    {"ns", Dimension::time, 1e-9},
    {"ps", Dimension::time, 1e-12},
    {"fs", Dimension::time, 1e-15},
    {"V", Dimension::voltage, 1.0},
    {"mV", Dimension::voltage, 1e-3},
    {"uV", Dimension::voltage, 1e-6},
    {"A", Dimension::current, 1.0},
    {"mA", Dimension::current, 1e-3},
    {"uA", Dimension::current, 1e-6},
    {"nA", Dimension::current, 1e-9},
    {"pA", Dimension::current, 1e-12},
    {"fA", Dimension::current, 1e-15},
    {"aA", Dimension::current, 1e-18},
    {"F", Dimension::capacitance, 1.0},
    {"mF", Dimension::capacitance, 1e-3},
    {"uF", Dimension::capacitance, 1e-6},
    {"nF", Dimension::capacitance, 1e-9},
    {"pF", Dimension::capacitance, 1e-12},
    {"fF", Dimension::capacitance, 1e-15},
    {"aF", Dimension::capacitance, 1e-18},
    {"W", Dimension::power, 1.0},
    {"mW", Dimension::power, 1e-3},
    {"uW", Dimension::power, 1e-6},
    {"nW", Dimension::power, 1e-9},
    {"pW", Dimension::power, 1e-12},
    {"J", Dimension::energy, 1.0},
    {"mJ", Dimension::energy, 1e-3},
    {"uJ", Dimension::energy, 1e-6},
    {"nJ", Dimension::energy, 1e-9},
    {"pJ", Dimension::energy, 1e-12},
    {"fJ", Dimension::energy, 1e-15},
    {"aJ", Dimension::energy, 1e-18},
    {"Hz", Dimension::frequency, 1.0},
    {"kHz", Dimension::frequency, 1e3},
    {"MHz", Dimension::frequency, 1e6},
    {"GHz", Dimension::frequency, 1e9},
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string dimension_suffixes(Dimension d) {
  std::string out;
  for (const auto& u : kUnits) {
    if (u.dim != d) continue;
    if (!out.empty()) out += ", ";
    out += u.suffix;
  }
  return out;
}

}  // namespace

const char* dimension_name(Dimension d) {
  switch (d) {
    case Dimension::time: return "time";
    case Dimension::voltage: return "voltage";
    case Dimension::current: return "current";
    case Dimension::capacitance: return "capacitance";
    case Dimension::power: return "power";
    case Dimension::energy: return "energy";
    case Dimension::frequency: return "frequency";
  }
  return "?";
}

double parse_quantity(const std::string& text, Dimension expected) {
  const std::string t = trim(text);
  errno = 0;
  char* end = nullptr;
  const double number = std::strtod(t.c_str(), &end);
  if (end == t.c_str() || errno == ERANGE)
    throw ConfigError("quantity '" + text + "': not a number");
  const std::string suffix = trim(std::string(end));
  if (suffix.empty())
    throw ConfigError("quantity '" + text + "': missing unit suffix, expected a " +
                      std::string(dimension_name(expected)) + " unit (" +
                      dimension_suffixes(expected) + ")");
  for (const auto& u : kUnits) {
    if (suffix != u.suffix) continue;
    if (u.dim != expected)
      throw ConfigError("quantity '" + text + "': unit '" + suffix +
                        "' is a " + dimension_name(u.dim) + " unit, expected " +
                        dimension_name(expected) + " (" +
                        dimension_suffixes(expected) + ")");
    return number * u.factor;
  }
  throw ConfigError("quantity '" + text + "': unknown unit '" + suffix + "'");
}

std::string format_quantity(double value, Dimension d) {
  const char* base = "?";
  switch (d) {
    case Dimension::time: base = "s"; break;
    case Dimension::voltage: base = "V"; break;
    case Dimension::current: base = "A"; break;
    case Dimension::capacitance: base = "F"; break;
    case Dimension::power: base = "W"; break;
    case Dimension::energy: base = "J"; break;
    case Dimension::frequency: base = "Hz"; break;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g %s", value, base);
  return buf;
}

const std::string* KvSection::get(const std::string& key) const {
  for (const auto& e : entries)
    if (e.key == key) return &e.value;
  return nullptr;
}

KvDocument KvDocument::parse(const std::string& text) {
  KvDocument doc;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  KvSection* current = nullptr;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParseError("expected ']' to close section header", line_no,
                         static_cast<int>(raw.size()));
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (name.empty()) throw ParseError("empty section name", line_no, 1);
      doc.sections.push_back(KvSection{name, {}, line_no});
      current = &doc.sections.back();
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'key = value'", line_no, 1);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", line_no, 1);
    if (value.empty())
      throw ParseError("empty value for key '" + key + "'", line_no,
                       static_cast<int>(eq) + 2);
    if (current == nullptr)
      throw ParseError("key '" + key + "' appears before any [section]",
                       line_no, 1);
    current->entries.push_back(KvEntry{key, value, line_no});
  }
  return doc;
}

KvDocument KvDocument::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string KvDocument::serialize() const {
  std::string out;
  for (const auto& s : sections) {
    out += '[' + s.name + "]\n";
    for (const auto& e : s.entries) out += e.key + " = " + e.value + '\n';
  }
  return out;
}

const KvSection* KvDocument::find(const std::string& name) const {
  for (const auto& s : sections)
    if (s.name == name) return &s;
  return nullptr;
}

KvSection& KvDocument::section(const std::string& name) {
  for (auto& s : sections)
    if (s.name == name) return s;
  sections.push_back(KvSection{name, {}, 0});
  return sections.back();
}

void KvDocument::set(const std::string& section_name, const std::string& key,
                     std::string value) {
  auto& s = section(section_name);
  for (auto& e : s.entries) {
    if (e.key == key) {
      e.value = std::move(value);
      return;
    }
  }
  s.entries.push_back(KvEntry{key, std::move(value), 0});
}

namespace {

std::uint64_t parse_count(const KvEntry& e) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(e.value.c_str(), &end, 10);
  if (end == e.value.c_str() || *end != '\0' || errno == ERANGE ||
      e.value.front() == '-')
    throw ConfigError("key '" + e.key + "' (line " + std::to_string(e.line) +
                      "): expected a non-negative integer, got '" + e.value +
                      "'");
  return v;
}

bool parse_bool(const KvEntry& e) {
  if (e.value == "true") return true;
  if (e.value == "false") return false;
  throw ConfigError("key '" + e.key + "' (line " + std::to_string(e.line) +
                    "): expected true or false, got '" + e.value + "'");
}

double parse_dim(const KvEntry& e, Dimension d) {
  try {
    return parse_quantity(e.value, d);
  } catch (const ConfigError& err) {
    throw ConfigError("key '" + e.key + "' (line " + std::to_string(e.line) +
                      "): " + err.what());
  }
}

[[noreturn]] void unknown_key(const std::string& section, const KvEntry& e) {
  throw ConfigError("unknown key '" + e.key + "' in [" + section + "] (line " +
                    std::to_string(e.line) + ")");
}

}  // namespace

RunConfig RunConfig::from_document(const KvDocument& doc) {
  RunConfig cfg;
  for (const auto& sec : doc.sections) {
    if (sec.name == "frame") {
      for (const auto& e : sec.entries) {
        if (e.key == "t_in") cfg.frame.t_in = parse_dim(e, Dimension::time);
        else if (e.key == "t_out") cfg.frame.t_out = parse_dim(e, Dimension::time);
        else if (e.key == "tick") cfg.tick = parse_dim(e, Dimension::time);
        else unknown_key(sec.name, e);
      }
    } else if (sec.name == "neuron") {
      for (const auto& e : sec.entries) {
        if (e.key == "c_d") cfg.c_d = parse_dim(e, Dimension::capacitance);
        else if (e.key == "c_n") cfg.c_n = parse_dim(e, Dimension::capacitance);
        else if (e.key == "v_theta") cfg.v_theta = parse_dim(e, Dimension::voltage);
        else if (e.key == "v_dd") cfg.v_dd = parse_dim(e, Dimension::voltage);
        else if (e.key == "settling_tau") cfg.settling_tau = parse_dim(e, Dimension::time);
        else unknown_key(sec.name, e);
      }
    } else if (sec.name == "device") {
      for (const auto& e : sec.entries) {
        if (e.key == "i0") cfg.i0 = parse_dim(e, Dimension::current);
        else if (e.key == "v_w") cfg.v_w = parse_dim(e, Dimension::voltage);
        else if (e.key == "slope_norm") cfg.slope_norm = parse_dim(e, Dimension::voltage);
        else if (e.key == "ideal_off") cfg.ideal_off = parse_bool(e);
        else unknown_key(sec.name, e);
      }
    } else if (sec.name == "variation") {
      for (const auto& e : sec.entries) {
        if (e.key == "sigma_vth") cfg.variation.sigma_vth = parse_dim(e, Dimension::voltage);
        else if (e.key == "jitter_sigma") cfg.variation.jitter_sigma = parse_dim(e, Dimension::time);
        else if (e.key == "seed") cfg.variation.seed = parse_count(e);
        else unknown_key(sec.name, e);
      }
    } else if (sec.name == "energy") {
      cfg.has_energy_section = true;
      for (const auto& e : sec.entries) {
        if (e.key == "c_gate") cfg.energy.c_gate = parse_dim(e, Dimension::capacitance);
        else if (e.key == "p_cmp") cfg.energy.p_cmp = parse_dim(e, Dimension::power);
        else if (e.key == "cycle_freq") cfg.energy.cycle_freq = parse_dim(e, Dimension::frequency);
        else unknown_key(sec.name, e);
      }
    } else if (sec.name == "experiment") {
      for (const auto& e : sec.entries) {
        if (e.key == "n_trials") cfg.experiment.n_trials = parse_count(e);
        else if (e.key == "n_inputs") cfg.experiment.n_inputs = parse_count(e);
        else if (e.key == "n_neurons") cfg.experiment.n_neurons = parse_count(e);
        else if (e.key == "averaging_runs") cfg.experiment.averaging_runs = static_cast<int>(parse_count(e));
        else if (e.key == "n_points") cfg.experiment.n_points = static_cast<int>(parse_count(e));
        else if (e.key == "seed") cfg.experiment.seed = parse_count(e);
        else unknown_key(sec.name, e);
      }
    } else {
      throw ConfigError("unknown section [" + sec.name + "] (line " +
                        std::to_string(sec.line) + ")");
    }
  }

  // Enforce every referenced type invariant up front.
  validate(cfg.neuron_config());
  validate(cfg.device_params());
  validate(cfg.variation);
  if (!(cfg.tick >= 0.0)) throw ConfigError("frame: tick must be >= 0");
  if (!(cfg.energy.c_gate >= 0.0) || !(cfg.energy.p_cmp >= 0.0) ||
      !(cfg.energy.cycle_freq >= 0.0))
    throw ConfigError("energy: values must be >= 0");
  if (cfg.experiment.n_trials < 1 || cfg.experiment.n_inputs < 1 ||
      cfg.experiment.n_neurons < 1)
    throw ConfigError("experiment: counts must be >= 1");
  if (cfg.experiment.averaging_runs < 1 || cfg.experiment.n_points < 2)
    throw ConfigError("experiment: averaging_runs >= 1 and n_points >= 2 required");
  return cfg;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  return from_document(KvDocument::parse_file(path));
}

NeuronConfig RunConfig::neuron_config() const {
  NeuronConfig n;
  n.c_d = c_d;
  n.c_n = c_n;
  n.v_theta = v_theta;
  n.v_dd = v_dd;
  n.frame = frame;
  n.settling_tau = settling_tau;
  return n;
}

SubthresholdParams RunConfig::device_params() const {
  SubthresholdParams p;
  p.i0 = i0;
  p.v_dd = v_dd;  // shared supply with the neuron section
  p.v_w = v_w;
  p.slope_norm = slope_norm;
  p.ideal_off = ideal_off;
  return p;
}

TrialConfig RunConfig::trial_config() const {
  TrialConfig tc;
  tc.n_trials = experiment.n_trials;
  tc.n_inputs = experiment.n_inputs;
  tc.variation = variation;
  tc.averaging_runs = experiment.averaging_runs;
  tc.seed = experiment.seed;
  return tc;
}

EnergyParams RunConfig::energy_params() const {
  EnergyParams p;
  p.e_switch_mac = energy.c_gate * v_dd * v_dd;
  p.e_switch_vpc = energy.c_gate * v_dd * v_dd;
  p.p_cmp = energy.p_cmp;
  return p;
}

double RunConfig::cycle_freq() const {
  if (energy.cycle_freq > 0.0) return energy.cycle_freq;
  return 1.0 / (frame.t_in + frame.t_out);
}

}  // namespace tdpwm
