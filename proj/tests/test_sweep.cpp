#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "support.hpp"
#include "sweepfv/mesh.hpp"
#include "sweepfv/sweep.hpp"

using namespace sweepfv;
using sweepfv::testing::mesh_dir;

TEST_SUITE_BEGIN("sweep");

TEST_CASE("default reference points are the bounding-box corners") {
  Mesh m = read_mesh(mesh_dir() + "/square2pi_m58.mesh");
  auto refs = default_reference_points(m);
  const double two_pi = 2.0 * std::numbers::pi;
  CHECK(refs[0] == Vec2{0.0, 0.0});
  CHECK(refs[1].x == doctest::Approx(two_pi));
  CHECK(refs[1].y == 0.0);
  CHECK(refs[2].x == doctest::Approx(two_pi));
  CHECK(refs[2].y == doctest::Approx(two_pi));
  CHECK(refs[3].x == 0.0);
  CHECK(refs[3].y == doctest::Approx(two_pi));

  // a 4x1 rectangle gives its four corners
  Mesh rect = read_mesh(mesh_dir() + "/rect4x1_m3200.mesh");
  auto r = default_reference_points(rect);
  CHECK(r[0] == Vec2{0.0, 0.0});
  CHECK(r[1] == Vec2{4.0, 0.0});
  CHECK(r[2] == Vec2{4.0, 1.0});
  CHECK(r[3] == Vec2{0.0, 1.0});
}

TEST_CASE("explicit reference points are used verbatim") {
  Mesh m = testing::two_cell_square();
  std::array<Vec2, 4> refs = {Vec2{-1.0, 2.0}, Vec2{3.0, 3.0}, Vec2{9.0, -1.0},
                              Vec2{0.5, 0.5}};
  SweepOrderings sw = build_orderings(m, refs);
  for (int l = 0; l < 4; ++l)
    CHECK(sw.reference_points[static_cast<std::size_t>(l)] ==
          refs[static_cast<std::size_t>(l)]);
}

TEST_CASE("three cells sort by distance in both directions") {
  // centroid distances to (0,0): cell layout gives 2.0, 1.0, 3.0
  Mesh m = parse_mesh(
      "9 3 9\n"
      "1.7 0.6\n2.3 0.6\n2.0 1.2\n0.7 0.6\n1.3 0.6\n1.0 1.2\n"
      "2.7 0.6\n3.3 0.6\n3.0 1.2\n"
      "0 1 2\n3 4 5\n6 7 8\n"
      "0 1 WALL\n1 2 WALL\n2 0 WALL\n3 4 WALL\n4 5 WALL\n5 3 WALL\n"
      "6 7 WALL\n7 8 WALL\n8 6 WALL\n");
  std::array<Vec2, 4> refs{Vec2{0.0, 0.8}, Vec2{0.0, 0.8}, Vec2{0.0, 0.8},
                           Vec2{0.0, 0.8}};
  SweepOrderings sw = build_orderings(m, refs);
  CHECK(sw.ascent(0) == std::vector<int>{1, 0, 2});
  CHECK(sw.descent(0) == std::vector<int>{2, 0, 1});
}

TEST_CASE("equidistant cells break ties by lower index in both orders") {
  Mesh m = testing::lattice_mesh(4);
  // reference at the domain center: plenty of exact distance ties
  std::array<Vec2, 4> refs{Vec2{2.0, 2.0}, Vec2{2.0, 2.0}, Vec2{2.0, 2.0},
                           Vec2{2.0, 2.0}};
  SweepOrderings sw = build_orderings(m, refs);
  const auto& asc = sw.ascent(0);
  const auto& desc = sw.descent(0);
  auto dist = [&](int i) {
    Vec2 d = m.geometry(i).centroid - refs[0];
    return dot(d, d);
  };
  for (std::size_t k = 1; k < asc.size(); ++k) {
    CHECK(dist(asc[k]) >= dist(asc[k - 1]));
    if (dist(asc[k]) == dist(asc[k - 1])) CHECK(asc[k] > asc[k - 1]);
    CHECK(dist(desc[k]) <= dist(desc[k - 1]));
    if (dist(desc[k]) == dist(desc[k - 1])) CHECK(desc[k] > desc[k - 1]);
  }
}

TEST_CASE("all eight orderings are permutations with monotone keys") {
  Mesh m = read_mesh(mesh_dir() + "/square2pi_m58.mesh");
  SweepOrderings sw = build_orderings(m, default_reference_points(m));
  for (int o = 0; o < 8; ++o) {
    const auto& ord = sw.orders[static_cast<std::size_t>(o)];
    REQUIRE(static_cast<int>(ord.size()) == m.cell_count());
    std::vector<int> sorted = ord;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < m.cell_count(); ++i) CHECK(sorted[i] == i);
    Vec2 ref = sw.reference_points[static_cast<std::size_t>(o / 2)];
    for (std::size_t k = 1; k < ord.size(); ++k) {
      Vec2 da = m.geometry(ord[k - 1]).centroid - ref;
      Vec2 db = m.geometry(ord[k]).centroid - ref;
      if (o % 2 == 0)
        CHECK(dot(da, da) <= dot(db, db));
      else
        CHECK(dot(da, da) >= dot(db, db));
    }
  }
}

TEST_CASE("orderings are deterministic across rebuilds") {
  Mesh m = read_mesh(mesh_dir() + "/square2pi_m58.mesh");
  SweepOrderings a = build_orderings(m, default_reference_points(m));
  SweepOrderings b = build_orderings(m, default_reference_points(m));
  for (int o = 0; o < 8; ++o)
    CHECK(a.orders[static_cast<std::size_t>(o)] ==
          b.orders[static_cast<std::size_t>(o)]);
}

TEST_SUITE_END();
