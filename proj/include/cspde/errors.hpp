#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cspde {

// Raised when an operation receives an argument that breaks its contract
// (wrong space, mismatched grids, bad sizes).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Invalid configuration or physical parameters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed snapshot, table or config file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite state detected during time stepping.
class InstabilityError : public std::runtime_error {
 public:
  InstabilityError(double t, std::uint64_t step, const std::string& what)
      : std::runtime_error(what), t_(t), step_(step) {}
  double time() const { return t_; }
  std::uint64_t step_index() const { return step_; }

 private:
  double t_;
  std::uint64_t step_;
};

}  // namespace cspde
