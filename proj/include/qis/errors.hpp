#pragma once

#include <stdexcept>
#include <string>

namespace qis {

// Bad or inconsistent user input (config text, CLI values).  CLI exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Valid input that violates a numeric or physical precondition.  CLI exit code 3.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qis
