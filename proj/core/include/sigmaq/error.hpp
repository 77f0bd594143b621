#pragma once

#include <stdexcept>
#include <string>

namespace sigmaq {

/// Invalid parameters, grids, or configuration keys.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested operation is not defined for this kind of input.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A path could not be extended far enough to resolve an inverse local time.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sigmaq
