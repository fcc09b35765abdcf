#pragma once
#include <stdexcept>
#include <string>

namespace taylor {

// Error taxonomy mirrored by the CLI exit codes:
//   ConfigError -> 2, GeometryError -> 3, ResonanceError -> 4, AccuracyError -> 5.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};
struct GeometryError : std::runtime_error {
  explicit GeometryError(const std::string& m) : std::runtime_error(m) {}
};
struct ResonanceError : std::runtime_error {
  explicit ResonanceError(const std::string& m) : std::runtime_error(m) {}
};
struct AccuracyError : std::runtime_error {
  explicit AccuracyError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace taylor
