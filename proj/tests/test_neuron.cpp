// Copyright (C) 2026 tdpwm authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <vector>

#include "tdpwm/neuron.hpp"
#include "tdpwm/rng.hpp"

using namespace tdpwm;

namespace {

NeuronConfig ideal_cfg() {
  NeuronConfig cfg;
  cfg.c_d = 1.5e-15;
  cfg.c_n = 1e-15;
  cfg.v_theta = 0.2;
  cfg.v_dd = 1.0;
  cfg.frame = {300e-9, 300e-9};
  return cfg;
}

SubthresholdParams ideal_dev() {
  SubthresholdParams dev;
  dev.ideal_off = true;
  return dev;
}

}  // namespace

TEST_CASE("accumulate_charge sums width * current") {
  const std::vector<ChargeContribution> c = {{100e-9, 1e-9}, {200e-9, 2e-9}};
  CHECK(accumulate_charge(c) == doctest::Approx(5e-16).epsilon(1e-12));
  CHECK(accumulate_charge({}) == 0.0);
  const std::vector<ChargeContribution> bad_w = {{-1e-9, 1e-9}};
  CHECK_THROWS_AS(accumulate_charge(bad_w), DomainError);
  const std::vector<ChargeContribution> bad_i = {{1e-9, -1e-9}};
  CHECK_THROWS_AS(accumulate_charge(bad_i), DomainError);
}

TEST_CASE("accumulate_charge matches an extended-precision reference") {
  Rng rng(11);
  std::vector<ChargeContribution> c;
  long double ref = 0.0L;
  for (int i = 0; i < 100; ++i) {
    const double w = rng.uniform() * 300e-9;
    const double cur = rng.uniform() * 100e-9;
    c.push_back({w, cur});
    ref += static_cast<long double>(w) * cur;
  }
  const double got = accumulate_charge(c);
  CHECK(std::abs(got - static_cast<double>(ref)) <=
        1e-12 * static_cast<double>(ref));
}

TEST_CASE("mac_voltage divides by the total capacitance") {
  NeuronConfig cfg = ideal_cfg();  // c_d + c_n = 2.5 fF
  CHECK(mac_voltage(5e-16, cfg) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(mac_voltage(0.0, cfg) == 0.0);
  CHECK_THROWS_AS(mac_voltage(-1e-18, cfg), DomainError);
}

TEST_CASE("vpc_ramp_current spans the threshold over t_out") {
  NeuronConfig cfg;
  cfg.c_n = 1e-15;
  cfg.v_theta = 0.2;
  cfg.frame = {300e-9, 300e-9};
  CHECK(vpc_ramp_current(cfg) == doctest::Approx(6.6666666666666674e-10));
  CHECK(vpc_source(cfg).nominal_current == vpc_ramp_current(cfg));

  NeuronConfig doubled = cfg;
  doubled.frame.t_out = 600e-9;
  CHECK(vpc_ramp_current(doubled) == vpc_ramp_current(cfg) / 2.0);
}

TEST_CASE("vpc_output_width is linear up to the clamp") {
  NeuronConfig cfg = ideal_cfg();
  const VpcResult half = vpc_output_width(0.1, cfg);
  CHECK(half.width == 150e-9);
  CHECK(!half.saturated);

  const VpcResult zero = vpc_output_width(0.0, cfg);
  CHECK(zero.width == 0.0);
  CHECK(!zero.saturated);

  const VpcResult over = vpc_output_width(0.3, cfg);
  CHECK(over.width == 300e-9);
  CHECK(over.saturated);
}

TEST_CASE("v_mac equal to the threshold is the top of the valid range") {
  // Exactly representable construction: q / (c_d + c_n) == 0.5 == v_theta.
  NeuronConfig cfg;
  cfg.c_d = 0.0;
  cfg.c_n = 2e-15;
  cfg.v_theta = 0.5;
  cfg.v_dd = 1.0;
  cfg.frame = {300e-9, 300e-9};
  const double v = mac_voltage(1e-15, cfg);
  CHECK(v == 0.5);
  const VpcResult r = vpc_output_width(v, cfg);
  CHECK(r.width == cfg.frame.t_out);
  CHECK(!r.saturated);
}

TEST_CASE("relu_combine") {
  CHECK(relu_combine(200e-9, 150e-9) == doctest::Approx(50e-9).epsilon(1e-12));
  CHECK(relu_combine(100e-9, 150e-9) == 0.0);
  CHECK(relu_combine(120e-9, 120e-9) == 0.0);
  CHECK_THROWS_AS(relu_combine(-1e-9, 0.0), DomainError);
}

TEST_CASE("simulate_neuron: zero inputs give zero output") {
  const auto cfg = ideal_cfg();
  const auto dev = ideal_dev();
  const std::vector<PwmSignal> inputs(8);
  const std::vector<BinarySynapseUnit> syn(8);
  const NeuronOutput out = simulate_neuron(inputs, syn, dev, cfg);
  CHECK(out.w_plus == 0.0);
  CHECK(out.w_minus == 0.0);
  CHECK(out.w_relu == 0.0);
  CHECK(!out.saturated());
}

TEST_CASE("simulate_neuron: full-scale calibration point hits t_out exactly") {
  // All quantities exactly representable: t = 2^-22 s, i0 = 1e-15 * 2^22 A,
  // so q = 1e-15 C, v_mac = 0.5 = v_theta and the output fills t_out.
  NeuronConfig cfg;
  cfg.c_d = 0.0;
  cfg.c_n = 2e-15;
  cfg.v_theta = 0.5;
  cfg.v_dd = 1.0;
  cfg.frame = {0x1p-22, 0x1p-22};

  SubthresholdParams dev;
  dev.ideal_off = true;
  dev.v_w = 1.0;  // on-current equals i0 exactly
  dev.i0 = std::ldexp(1e-15, 22);

  const std::vector<PwmSignal> inputs = {{cfg.frame.t_in}};
  const std::vector<BinarySynapseUnit> syn(1);
  const NeuronOutput out = simulate_neuron(inputs, syn, dev, cfg);
  CHECK(out.plus.charge == 1e-15);
  CHECK(out.plus.v_mac == 0.5);
  CHECK(out.w_relu == cfg.frame.t_out);
  CHECK(!out.saturated());
}

TEST_CASE("simulate_neuron matches the partitioned charge model") {
  const auto dev = ideal_dev();
  const double i_on = on_current(dev);
  Rng rng(21);

  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform() * 100);
    std::vector<PwmSignal> inputs(n);
    std::vector<BinarySynapseUnit> syn(n);
    NeuronConfig cfg = ideal_cfg();

    long double q_plus = 0.0L, q_minus = 0.0L;
    for (int i = 0; i < n; ++i) {
      inputs[i].width = rng.uniform() * cfg.frame.t_in;
      syn[i].weight = rng.sign();
      (syn[i].weight > 0 ? q_plus : q_minus) +=
          static_cast<long double>(inputs[i].width) * i_on;
    }
    // Scale the capacitance so that neither rail saturates.
    const double q_max = static_cast<double>(std::max(q_plus, q_minus));
    cfg.c_n = (q_max / cfg.v_theta) * 1.25 + 1e-16;
    cfg.c_d = cfg.c_n / 4.0;

    const NeuronOutput out = simulate_neuron(inputs, syn, dev, cfg);
    const double c_total = cfg.c_d + cfg.c_n;
    const double w_plus_ref = static_cast<double>(
        q_plus / (c_total * cfg.v_theta) * cfg.frame.t_out);
    const double w_minus_ref = static_cast<double>(
        q_minus / (c_total * cfg.v_theta) * cfg.frame.t_out);

    CHECK(out.w_plus == doctest::Approx(w_plus_ref).epsilon(1e-12));
    CHECK(out.w_minus == doctest::Approx(w_minus_ref).epsilon(1e-12));
    // Both rails share the denominator, so the difference carries the
    // bracketed charge difference with the common factor.
    CHECK(out.w_plus - out.w_minus ==
          doctest::Approx(static_cast<double>(q_plus - q_minus) /
                          (c_total * cfg.v_theta) * cfg.frame.t_out)
              .epsilon(1e-9));
  }
}

TEST_CASE("halving every width exactly halves both rails") {
  const auto dev = ideal_dev();
  Rng rng(22);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform() * 30);
    std::vector<PwmSignal> inputs(n), halved(n);
    std::vector<BinarySynapseUnit> syn(n);
    for (int i = 0; i < n; ++i) {
      inputs[i].width = rng.uniform() * 300e-9;
      halved[i].width = inputs[i].width * 0.5;
      syn[i].weight = rng.sign();
    }
    NeuronConfig cfg = ideal_cfg();
    cfg.c_n = 500e-15;  // far from saturation
    const NeuronOutput full = simulate_neuron(inputs, syn, dev, cfg);
    const NeuronOutput half = simulate_neuron(halved, syn, dev, cfg);
    CHECK(half.w_plus == 0.5 * full.w_plus);
    CHECK(half.w_minus == 0.5 * full.w_minus);
  }
}

TEST_CASE("flipping every weight swaps the rails exactly") {
  SubthresholdParams dev;  // leakage enabled
  Rng rng(23);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform() * 30);
    std::vector<PwmSignal> inputs(n);
    std::vector<BinarySynapseUnit> syn(n), flipped(n);
    for (int i = 0; i < n; ++i) {
      inputs[i].width = rng.uniform() * 300e-9;
      syn[i].weight = rng.sign();
      flipped[i].weight = -syn[i].weight;
    }
    const NeuronConfig cfg = ideal_cfg();
    const NeuronOutput a = simulate_neuron(inputs, syn, dev, cfg);
    const NeuronOutput b = simulate_neuron(inputs, flipped, dev, cfg);
    CHECK(a.w_plus == b.w_minus);
    CHECK(a.w_minus == b.w_plus);
    CHECK(a.plus.charge == b.minus.charge);
  }
}

TEST_CASE("output width is non-decreasing in any input width, through the clamp") {
  const auto dev = ideal_dev();
  Rng rng(24);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform() * 20);
    std::vector<PwmSignal> inputs(n);
    std::vector<BinarySynapseUnit> syn(n);
    NeuronConfig cfg = ideal_cfg();
    for (int i = 0; i < n; ++i) {
      inputs[i].width = rng.uniform() * cfg.frame.t_in;
      syn[i].weight = rng.sign();
    }
    syn[0].weight = +1;
    // Small capacitance so the sweep crosses saturation.
    cfg.c_n = 2e-16;
    cfg.c_d = 0.0;

    double prev = -1.0;
    for (int step = 0; step <= 20; ++step) {
      inputs[0].width = cfg.frame.t_in * step / 20.0;
      const NeuronOutput out = simulate_neuron(inputs, syn, dev, cfg);
      CHECK(out.w_plus >= prev);
      prev = out.w_plus;
    }
  }
}

TEST_CASE("settling correction reduces delivered charge") {
  NeuronConfig cfg = ideal_cfg();
  cfg.settling_tau = 100e-9;
  SubthresholdParams dev = ideal_dev();
  const double i_on = on_current(dev);
  const double w = 250e-9;

  const std::vector<PwmSignal> inputs = {{w}};
  const std::vector<BinarySynapseUnit> syn(1);
  const NeuronOutput out = simulate_neuron(inputs, syn, dev, cfg);
  const double expected =
      i_on * cfg.settling_tau * (1.0 - std::exp(-w / cfg.settling_tau));
  CHECK(out.plus.charge == doctest::Approx(expected).epsilon(1e-12));
  CHECK(out.plus.charge < i_on * w);

  cfg.settling_tau = 0.0;
  const NeuronOutput ideal = simulate_neuron(inputs, syn, dev, cfg);
  CHECK(ideal.plus.charge == doctest::Approx(i_on * w).epsilon(1e-12));
}

TEST_CASE("simulate_neuron rejects malformed input") {
  const auto cfg = ideal_cfg();
  const auto dev = ideal_dev();
  const std::vector<PwmSignal> inputs(3);
  const std::vector<BinarySynapseUnit> syn(4);
  CHECK_THROWS_AS(simulate_neuron(inputs, syn, dev, cfg), DomainError);

  const std::vector<PwmSignal> wide = {{400e-9}};
  const std::vector<BinarySynapseUnit> one(1);
  CHECK_THROWS_AS(simulate_neuron(wide, one, dev, cfg), DomainError);
}

TEST_CASE("ideal_gain matches the closed-form factor") {
  const auto cfg = ideal_cfg();
  const auto dev = ideal_dev();
  const double expected = on_current(dev) * cfg.frame.t_in /
                          ((cfg.c_d + cfg.c_n) * cfg.v_theta);
  CHECK(ideal_gain(dev, cfg) == expected);
}
