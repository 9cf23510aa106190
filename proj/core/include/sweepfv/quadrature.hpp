#pragma once

#include <array>

#include "sweepfv/geometry.hpp"

namespace sweepfv {

/// Three-point Gauss-Legendre rule mapped to a segment. Weights sum to 1;
/// the segment length is applied by the caller.
struct EdgeQuadrature {
  std::array<Vec2, 3> points;
  std::array<double, 3> weights;
};

/// Throws MeshError on a zero-length edge.
EdgeQuadrature edge_quadrature(Vec2 p0, Vec2 p1);

/// Symmetric 12-point rule on a triangle, exact for bivariate polynomials of
/// total degree <= 6. Weights are normalized to the unit triangle; integrals
/// scale by the triangle area.
class TriangleQuadrature {
 public:
  static constexpr int kNumPoints = 12;

  struct Node {
    double b1, b2;  // barycentric coordinates w.r.t. vertices 1 and 2
    double w;       // weight, sum over nodes = 1
  };

  static const std::array<Node, kNumPoints>& nodes();

  /// Integral mean of f over the triangle (v0, v1, v2).
  template <class F>
  static auto average(Vec2 v0, Vec2 v1, Vec2 v2, F&& f) {
    const auto& ns = nodes();
    Vec2 p0 = v0 + ns[0].b1 * (v1 - v0) + ns[0].b2 * (v2 - v0);
    auto acc = ns[0].w * f(p0);
    for (int q = 1; q < kNumPoints; ++q) {
      Vec2 p = v0 + ns[q].b1 * (v1 - v0) + ns[q].b2 * (v2 - v0);
      acc += ns[q].w * f(p);
    }
    return acc;
  }
};

}  // namespace sweepfv
