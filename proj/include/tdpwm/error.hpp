// Copyright (C) 2026 tdpwm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace tdpwm {

// Invalid value handed to an operation (out-of-range input, bad weight, ...).
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Invalid configuration: broken type invariants, unknown keys, mismatched
// frames or dimensions.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Syntax error in a config or weight file, with source position.
class ParseError : public ConfigError {
public:
  ParseError(const std::string& msg, int line, int column)
      : ConfigError(msg + " (line " + std::to_string(line) + ", column " +
                    std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

private:
  int line_;
  int column_;
};

}  // namespace tdpwm
