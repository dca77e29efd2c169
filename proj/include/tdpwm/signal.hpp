// Copyright (C) 2026 tdpwm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tdpwm/error.hpp"

namespace tdpwm {

// Input and output periods of one calculation frame. Analog values are
// carried as pulse widths relative to these periods.
struct TimingFrame {
  double t_in = 300e-9;   // seconds
  double t_out = 300e-9;  // seconds
};

// A pulse inside a timing frame, represented by its on-time only. Charge
// accumulation depends on the total on-time per input, not on where the
// pulse sits in the frame, so alignment is not modeled. A width of zero is
// an input held low for the whole frame.
struct PwmSignal {
  double width = 0.0;  // seconds, 0 <= width <= frame period
};

enum class FrameSide { input, output };

// Throws ConfigError unless both periods are strictly positive and finite.
void validate_frame(const TimingFrame& frame);

// Value x in [0, 1] -> pulse of width x * t_in. Out-of-range or non-finite
// x -> DomainError.
PwmSignal encode_value(double x, const TimingFrame& frame);

// Pulse width -> value in [0, 1] against the selected period. A width
// exceeding that period -> DomainError.
double decode_width(const PwmSignal& s, const TimingFrame& frame,
                    FrameSide against);

// Rounds a width to the nearest multiple of `tick`, modeling finite timing
// resolution. tick <= 0 leaves the pulse untouched (continuous model, the
// default everywhere).
PwmSignal quantize(const PwmSignal& s, double tick);

}  // namespace tdpwm
