#pragma once

#include <array>
#include <vector>

#include "sweepfv/geometry.hpp"
#include "sweepfv/mesh.hpp"

namespace sweepfv {

/// Eight cell-index permutations: ascent and descent orderings of centroid
/// distance to each of four reference points. The iteration schedule cycles
/// them in order (ref 0 ascent, ref 0 descent, ref 1 ascent, ...).
struct SweepOrderings {
  std::array<Vec2, 4> reference_points;
  std::array<std::vector<int>, 8> orders;

  const std::vector<int>& ascent(int ref) const {
    return orders[static_cast<std::size_t>(2 * ref)];
  }
  const std::vector<int>& descent(int ref) const {
    return orders[static_cast<std::size_t>(2 * ref + 1)];
  }
};

/// The four bounding-box corners, the default for rectangular domains.
std::array<Vec2, 4> default_reference_points(const Mesh& mesh);

/// Sort cell indices by squared centroid distance to each reference point,
/// ties broken by ascending cell index in both directions.
SweepOrderings build_orderings(const Mesh& mesh,
                               const std::array<Vec2, 4>& refs);

}  // namespace sweepfv
