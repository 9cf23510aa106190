#pragma once

#include <stdexcept>
#include <string>

namespace sweepfv {

/// Malformed mesh file or invalid mesh topology/geometry.
class MeshError : public std::runtime_error {
 public:
  explicit MeshError(const std::string& what) : std::runtime_error(what) {}
};

/// A reconstruction least-squares system lost numerical rank.
class RankDeficiencyError : public std::runtime_error {
 public:
  explicit RankDeficiencyError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Encountered a state with non-positive density or pressure.
class NonPhysicalStateError : public std::runtime_error {
 public:
  explicit NonPhysicalStateError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Bad run configuration (unknown case id, missing boundary rule, ...).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sweepfv
