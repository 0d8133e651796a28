#pragma once

#include <stdexcept>
#include <string>

namespace docest {

// Error taxonomy mirrors the CLI exit codes: config errors exit 2,
// numerical failures exit 3, I/O failures exit 4.

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Root finders and optimizers attach their trajectory for post-mortems.
class SolverError : public NumericalError {
 public:
  explicit SolverError(const std::string& msg) : NumericalError(msg) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace docest
