#pragma once

#include <cmath>
#include <functional>
#include <sstream>
#include <string>

#include "sweepfv/mesh.hpp"

namespace sweepfv::testing {

inline std::string mesh_dir() {
  return std::string(SWEEPFV_SOURCE_DIR) + "/meshes";
}

/// Unit square split along the main diagonal: 4 nodes, 2 cells, all
/// boundaries tagged `tag`.
inline Mesh two_cell_square(std::string_view tag = "OUTFLOW") {
  std::ostringstream s;
  s << "4 2 4\n0 0\n1 0\n1 1\n0 1\n0 1 2\n0 2 3\n";
  s << "0 1 " << tag << "\n1 2 " << tag << "\n2 3 " << tag << "\n3 0 " << tag
    << "\n";
  return parse_mesh(s.str());
}

/// Regular right-triangle lattice on [0,n]x[0,n]: each unit square split by
/// the diagonal from its lower-left to upper-right corner.
inline Mesh lattice_mesh(int n, std::string_view tag = "OUTFLOW",
                         double scale = 1.0) {
  std::ostringstream s;
  auto node = [n](int ix, int iy) { return iy * (n + 1) + ix; };
  s << (n + 1) * (n + 1) << ' ' << 2 * n * n << ' ' << 4 * n << '\n';
  for (int iy = 0; iy <= n; ++iy)
    for (int ix = 0; ix <= n; ++ix)
      s << scale * ix << ' ' << scale * iy << '\n';
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      int a = node(ix, iy), b = node(ix + 1, iy), c = node(ix + 1, iy + 1),
          d = node(ix, iy + 1);
      s << a << ' ' << b << ' ' << c << '\n';
      s << a << ' ' << c << ' ' << d << '\n';
    }
  for (int k = 0; k < n; ++k) {
    s << node(k, 0) << ' ' << node(k + 1, 0) << ' ' << tag << '\n';
    s << node(k, n) << ' ' << node(k + 1, n) << ' ' << tag << '\n';
    s << node(0, k) << ' ' << node(0, k + 1) << ' ' << tag << '\n';
    s << node(n, k) << ' ' << node(n, k + 1) << ' ' << tag << '\n';
  }
  return parse_mesh(s.str());
}

/// Brute-force integral of f over a triangle by recursive midpoint
/// subdivision; an oracle independent of the quadrature rules.
inline double subdivide_integral(Vec2 a, Vec2 b, Vec2 c,
                                 const std::function<double(Vec2)>& f,
                                 int levels) {
  if (levels == 0) {
    double area = 0.5 * std::abs(cross(b - a, c - a));
    Vec2 mid = (1.0 / 3.0) * (a + b + c);
    return area * f(mid);
  }
  Vec2 ab = 0.5 * (a + b), bc = 0.5 * (b + c), ca = 0.5 * (c + a);
  return subdivide_integral(a, ab, ca, f, levels - 1) +
         subdivide_integral(ab, b, bc, f, levels - 1) +
         subdivide_integral(ca, bc, c, f, levels - 1) +
         subdivide_integral(ab, bc, ca, f, levels - 1);
}

/// Richardson-extrapolated version of the subdivision oracle (the midpoint
/// rule converges at second order in the subdivision width).
inline double subdivide_integral_rich(Vec2 a, Vec2 b, Vec2 c,
                                      const std::function<double(Vec2)>& f,
                                      int levels) {
  double coarse = subdivide_integral(a, b, c, f, levels - 1);
  double fine = subdivide_integral(a, b, c, f, levels);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace sweepfv::testing
