#pragma once

#include <stdexcept>
#include <string>

namespace dataudit {

// Error taxonomy mirrors the CLI exit-code contract:
//   validation/config -> 2, optimization -> 3, environment/transport -> 4.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public ValidationError {
public:
  explicit ConfigError(const std::string& what) : ValidationError(what) {}
};

class LoadError : public ValidationError {
public:
  explicit LoadError(const std::string& what) : ValidationError(what) {}
};

class OptimizationError : public std::runtime_error {
public:
  explicit OptimizationError(const std::string& what) : std::runtime_error(what) {}
};

class TransportError : public std::runtime_error {
public:
  explicit TransportError(const std::string& what) : std::runtime_error(what) {}
};

class EnvironmentError : public std::runtime_error {
public:
  explicit EnvironmentError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dataudit
