#include "sweepfv/quadrature.hpp"

#include <cmath>

#include "sweepfv/errors.hpp"

namespace sweepfv {

EdgeQuadrature edge_quadrature(Vec2 p0, Vec2 p1) {
  if (p0 == p1) throw MeshError("edge_quadrature: zero-length edge");
  const double off = 0.5 * std::sqrt(0.6);  // Gauss x = +-sqrt(3/5) on [-1,1]
  Vec2 mid = 0.5 * (p0 + p1);
  Vec2 half = p1 - p0;
  EdgeQuadrature q;
  q.points = {mid - off * half, mid, mid + off * half};
  q.weights = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
  return q;
}

const std::array<TriangleQuadrature::Node, TriangleQuadrature::kNumPoints>&
TriangleQuadrature::nodes() {
  // Symmetric degree-6 rule: two 3-point orbits (a, a, 1-2a) and one 6-point
  // orbit (a, b, 1-a-b) in barycentric coordinates.
  static constexpr double w1 = 0.050844906370206817;
  static constexpr double a1 = 0.063089014491502228;
  static constexpr double c1 = 1.0 - 2.0 * a1;
  static constexpr double w2 = 0.11678627572637937;
  static constexpr double a2 = 0.24928674517091042;
  static constexpr double c2 = 1.0 - 2.0 * a2;
  static constexpr double w3 = 0.082851075618373575;
  static constexpr double a3 = 0.053145049844816947;
  static constexpr double b3 = 0.31035245103378441;
  static constexpr double c3 = 1.0 - a3 - b3;
  static const std::array<Node, kNumPoints> table = {{
      {a1, a1, w1}, {c1, a1, w1}, {a1, c1, w1},
      {a2, a2, w2}, {c2, a2, w2}, {a2, c2, w2},
      {b3, c3, w3}, {c3, b3, w3}, {a3, b3, w3},
      {b3, a3, w3}, {a3, c3, w3}, {c3, a3, w3},
  }};
  return table;
}

}  // namespace sweepfv
