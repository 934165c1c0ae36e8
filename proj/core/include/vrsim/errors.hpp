#pragma once

#include <stdexcept>
#include <string>

namespace vrsim {

// Bad run configuration (CLI maps this to exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or unreadable input data (CLI maps this to exit code 3).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vrsim
