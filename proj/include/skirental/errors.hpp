#pragma once

#include <stdexcept>
#include <string>

namespace skirental {

/// λ outside (0, 1], or λ·b < 1 so the buy-late support would be empty.
class InvalidHyperparameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A ski-rental instance whose optimal cost is zero (season of length 0).
class DegenerateInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Bad configuration value or unknown key; the message names the key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace skirental
