#pragma once

#include <stdexcept>
#include <string>

#include "leaksim/protocol.hpp"

namespace leaksim {

/// Bad configuration input; the message names the offending field.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses the key/value experiment configuration format:
///   key = value          # comment
/// Values are numbers, booleans, quoted strings or [a, b, ...] lists.
/// Unknown keys are rejected with the key name. Missing keys keep their
/// defaults. Throws ValidationError on any problem, including config
/// constraints (t1_us <= 0, cycles < 1, non-normalized initial state, ...).
ExperimentConfig parse_config_text(const std::string& text);

ExperimentConfig parse_config_file(const std::string& path);

/// Canonical text form; parse_config_text(emit_config(c)) round-trips
/// exactly. Numbers are written with 17 significant digits.
std::string emit_config(const ExperimentConfig& config);

}  // namespace leaksim
