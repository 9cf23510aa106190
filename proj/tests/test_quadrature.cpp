#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "sweepfv/errors.hpp"
#include "sweepfv/quadrature.hpp"

using namespace sweepfv;

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// integral of x^a y^b over the reference triangle (0,0),(1,0),(0,1)
double reference_moment(int a, int b) {
  return factorial(a) * factorial(b) / factorial(a + b + 2);
}

}  // namespace

TEST_SUITE_BEGIN("quadrature");

TEST_CASE("edge rule has the analytic Gauss-Legendre layout") {
  auto q = edge_quadrature({0.0, 0.0}, {1.0, 0.0});
  double off = 0.5 * std::sqrt(0.6);
  CHECK(q.points[0].x == doctest::Approx(0.5 - off).epsilon(1e-15));
  CHECK(q.points[1].x == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(q.points[2].x == doctest::Approx(0.5 + off).epsilon(1e-15));
  for (auto p : q.points) CHECK(p.y == 0.0);
  CHECK(q.weights[0] == 5.0 / 18.0);
  CHECK(q.weights[1] == 8.0 / 18.0);
  CHECK(q.weights[2] == 5.0 / 18.0);
}

TEST_CASE("edge rule integrates x^5 on [0,1] exactly") {
  auto q = edge_quadrature({0.0, 0.0}, {1.0, 0.0});
  double sum = 0.0;
  for (int m = 0; m < 3; ++m) sum += q.weights[m] * std::pow(q.points[m].x, 5);
  CHECK(sum == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("edge weights sum to 1 and points stay on the segment") {
  Vec2 a{-2.0, 3.5}, b{0.25, -1.0};
  auto q = edge_quadrature(a, b);
  CHECK(q.weights[0] + q.weights[1] + q.weights[2] ==
        doctest::Approx(1.0).epsilon(1e-16));
  Vec2 d = b - a;
  for (auto p : q.points) {
    double t = dot(p - a, d) / dot(d, d);
    CHECK(t > 0.0);
    CHECK(t < 1.0);
    CHECK(std::abs(cross(d, p - a)) < 1e-14);
  }
}

TEST_CASE("zero-length edge is rejected") {
  CHECK_THROWS_AS(edge_quadrature({1.0, 2.0}, {1.0, 2.0}), MeshError);
}

TEST_CASE("triangle rule is exact for all monomials up to degree 6") {
  for (int d = 0; d <= 6; ++d) {
    for (int a = 0; a <= d; ++a) {
      int b = d - a;
      double approx = 0.5 * TriangleQuadrature::average(
                                {0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, [&](Vec2 p) {
                                  return std::pow(p.x, a) * std::pow(p.y, b);
                                });
      CHECK(approx == doctest::Approx(reference_moment(a, b))
                          .epsilon(1e-13));
    }
  }
}

TEST_CASE("triangle rule weights sum to 1 and points lie inside") {
  double sum = 0.0;
  for (const auto& n : TriangleQuadrature::nodes()) {
    sum += n.w;
    CHECK(n.b1 > 0.0);
    CHECK(n.b2 > 0.0);
    CHECK(n.b1 + n.b2 < 1.0);
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("triangle rule matches the subdivision oracle on a smooth field") {
  Vec2 a{0.30, -1.00}, b{0.72, -0.65}, c{0.45, -0.33};
  auto f = [](Vec2 p) { return std::sin(p.x + 2.0 * p.y) + p.x * p.x; };
  double area = 0.5 * std::abs(cross(b - a, c - a));
  double got = area * TriangleQuadrature::average(a, b, c, f);
  double oracle = testing::subdivide_integral_rich(a, b, c, f, 9);
  CHECK(got == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_SUITE_END();
