// Copyright (C) 2026 tdpwm authors
// SPDX-License-Identifier: Apache-2.0
#include "tdpwm/signal.hpp"

#include <cmath>

namespace tdpwm {

void validate_frame(const TimingFrame& frame) {
  if (!(frame.t_in > 0.0) || !std::isfinite(frame.t_in))
    throw ConfigError("timing frame: t_in must be finite and > 0");
  if (!(frame.t_out > 0.0) || !std::isfinite(frame.t_out))
    throw ConfigError("timing frame: t_out must be finite and > 0");
}

PwmSignal encode_value(double x, const TimingFrame& frame) {
  validate_frame(frame);
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainError("encode_value: value must lie in [0, 1]");
  return PwmSignal{x * frame.t_in};
}

double decode_width(const PwmSignal& s, const TimingFrame& frame,
                    FrameSide against) {
  validate_frame(frame);
  const double period = against == FrameSide::input ? frame.t_in : frame.t_out;
  if (!(s.width >= 0.0))
    throw DomainError("decode_width: negative pulse width");
  if (s.width > period)
    throw DomainError("decode_width: pulse width exceeds the frame period");
  return s.width / period;
}

PwmSignal quantize(const PwmSignal& s, double tick) {
  if (tick <= 0.0) return s;
  return PwmSignal{std::round(s.width / tick) * tick};
}

}  // namespace tdpwm
