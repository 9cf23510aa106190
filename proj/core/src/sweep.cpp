#include "sweepfv/sweep.hpp"

#include <algorithm>
#include <numeric>

namespace sweepfv {

std::array<Vec2, 4> default_reference_points(const Mesh& mesh) {
  Vec2 lo = mesh.bbox_min;
  Vec2 hi = mesh.bbox_max;
  return {Vec2{lo.x, lo.y}, Vec2{hi.x, lo.y}, Vec2{hi.x, hi.y},
          Vec2{lo.x, hi.y}};
}

SweepOrderings build_orderings(const Mesh& mesh,
                               const std::array<Vec2, 4>& refs) {
  SweepOrderings sw;
  sw.reference_points = refs;
  const int m = mesh.cell_count();
  std::vector<double> dist(static_cast<std::size_t>(m));
  for (int l = 0; l < 4; ++l) {
    for (int i = 0; i < m; ++i) {
      Vec2 d = mesh.geometry(i).centroid - refs[static_cast<std::size_t>(l)];
      dist[static_cast<std::size_t>(i)] = dot(d, d);
    }
    auto& asc = sw.orders[static_cast<std::size_t>(2 * l)];
    auto& desc = sw.orders[static_cast<std::size_t>(2 * l + 1)];
    asc.resize(static_cast<std::size_t>(m));
    std::iota(asc.begin(), asc.end(), 0);
    desc = asc;
    std::sort(asc.begin(), asc.end(), [&](int a, int b) {
      double da = dist[static_cast<std::size_t>(a)];
      double db = dist[static_cast<std::size_t>(b)];
      return da < db || (da == db && a < b);
    });
    std::sort(desc.begin(), desc.end(), [&](int a, int b) {
      double da = dist[static_cast<std::size_t>(a)];
      double db = dist[static_cast<std::size_t>(b)];
      return da > db || (da == db && a < b);
    });
  }
  return sw;
}

}  // namespace sweepfv
