#include <cmath>
#include <functional>
#include <random>
#include <set>

#include "doctest.h"
#include "support.hpp"
#include "sweepfv/errors.hpp"
#include "sweepfv/mesh.hpp"
#include "sweepfv/stencil.hpp"

using namespace sweepfv;
using sweepfv::testing::lattice_mesh;
using sweepfv::testing::mesh_dir;

namespace {

// scalar cell averages of f over every cell of the extension
std::vector<double> averages_of(const ExtendedMesh& ext,
                                const std::function<double(Vec2)>& f) {
  std::vector<double> avg(static_cast<std::size_t>(ext.cell_count()));
  for (int i = 0; i < ext.cell_count(); ++i)
    avg[static_cast<std::size_t>(i)] = ghost_cell_average(ext, i, f);
  return avg;
}

std::vector<double> gather(const std::vector<double>& all,
                           const std::vector<int>& members) {
  std::vector<double> out;
  for (int i : members) out.push_back(all[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("stencil");

TEST_CASE("interior lattice cell gets the full stencil layout") {
  Mesh m = lattice_mesh(8);
  ExtendedMesh ext = extend_for_exact_boundaries(m);
  StencilSet set = build_stencils(ext);
  int target = (4 * 8 + 4) * 2;  // lower triangle of the (4,4) square
  const CellStencil& st = set.cells[static_cast<std::size_t>(target)];
  CHECK(st.big.size() == 16);
  CHECK(st.big_degree == 4);
  CHECK(!st.degraded);
  for (const auto& sub : st.small) CHECK(sub.size() == 4);
  // target first, no duplicates anywhere
  CHECK(st.big[0] == target);
  std::set<int> uniq(st.big.begin(), st.big.end());
  CHECK(uniq.size() == st.big.size());
  for (const auto& sub : st.small) {
    CHECK(sub[0] == target);
    std::set<int> u2(sub.begin(), sub.end());
    CHECK(u2.size() == sub.size());
  }
}

TEST_CASE("every cell of the ghost-extended coarse mesh supports a quartic") {
  Mesh m = read_mesh(mesh_dir() + "/square2pi_m58.mesh");
  ExtendedMesh ext = extend_for_exact_boundaries(m);
  StencilSet set = build_stencils(ext);
  for (int i = 0; i < ext.real_count; ++i) {
    const CellStencil& st = set.cells[static_cast<std::size_t>(i)];
    CHECK(st.big.size() >= 15);
    CHECK(st.big_degree == 4);
    CHECK(st.big[0] == i);
    std::set<int> uniq(st.big.begin(), st.big.end());
    CHECK(uniq.size() == st.big.size());
  }
}

TEST_CASE("boundary cells without ghosts degrade instead of failing") {
  Mesh m = testing::two_cell_square("OUTFLOW");
  ExtendedMesh ext = extend_for_exact_boundaries(m);
  StencilSet set = build_stencils(ext);
  ReconstructionSet rs = assemble_operators(ext, set);
  for (int i = 0; i < 2; ++i) {
    CHECK(set.cells[static_cast<std::size_t>(i)].degraded);
    CHECK(set.cells[static_cast<std::size_t>(i)].big_degree == 0);
    // constant data reproduces the constant
    std::vector<double> avg(2, 3.25);
    Polynomial p = apply_operator(
        rs, i, 0, gather(avg, set.cells[static_cast<std::size_t>(i)].big));
    CHECK(p.eval({0.4, 0.6}) == doctest::Approx(3.25).epsilon(1e-15));
  }
}

TEST_CASE("constant averages reproduce the constant on every stencil") {
  Mesh m = read_mesh(mesh_dir() + "/square2pi_m58.mesh");
  ExtendedMesh ext = extend_for_exact_boundaries(m);
  ReconstructionSet rs = assemble_operators(ext, build_stencils(ext));
  auto avg = averages_of(ext, [](Vec2) { return 4.5; });
  for (int i : {0, 17, 42}) {
    const CellStencil& st = rs.stencils.cells[static_cast<std::size_t>(i)];
    for (int mstencil = 0; mstencil < 5; ++mstencil) {
      const auto& members =
          mstencil == 0 ? st.big : st.small[static_cast<std::size_t>(mstencil - 1)];
      if (members.empty()) continue;
      Polynomial p = apply_operator(rs, i, mstencil, gather(avg, members));
      for (std::size_t c = 1; c < p.coeffs.size(); ++c)
        CHECK(std::abs(p.coeffs[c]) < 1e-13);
      CHECK(p.coeffs[0] == doctest::Approx(4.5).epsilon(1e-14));
    }
  }
}

TEST_CASE("linear fields are reproduced by every stencil") {
  // cell averages of a linear function equal its centroid values
  Mesh m = read_mesh(mesh_dir() + "/square2pi_m58.mesh");
  ExtendedMesh ext = extend_for_exact_boundaries(m);
  ReconstructionSet rs = assemble_operators(ext, build_stencils(ext));
  auto f = [](Vec2 p) { return 2.0 * p.x - 3.0 * p.y + 1.0; };
  std::vector<double> avg(static_cast<std::size_t>(ext.cell_count()));
  for (int i = 0; i < ext.cell_count(); ++i)
    avg[static_cast<std::size_t>(i)] = f(ext.geometry(i).centroid);

  for (int i = 0; i < ext.real_count; i += 7) {
    const CellStencil& st = rs.stencils.cells[static_cast<std::size_t>(i)];
    for (int mstencil = 0; mstencil < 5; ++mstencil) {
      const auto& members =
          mstencil == 0 ? st.big : st.small[static_cast<std::size_t>(mstencil - 1)];
      if (members.empty()) continue;
      Polynomial p = apply_operator(rs, i, mstencil, gather(avg, members));
      // the field spans about +-20 over the domain; 1e-12 relative to that
      for (int j : members) {
        Vec2 q = ext.geometry(j).centroid;
        CHECK(std::abs(p.eval(q) - f(q)) < 2e-11);
      }
      Vec2 vertex = ext.cell_nodes[static_cast<std::size_t>(i)][0];
      CHECK(std::abs(p.eval(vertex) - f(vertex)) < 2e-11);
    }
  }
}

TEST_CASE("a random quartic is recovered exactly by the big operator") {
  Mesh m = read_mesh(mesh_dir() + "/square2pi_m58.mesh");
  ExtendedMesh ext = extend_for_exact_boundaries(m);
  ReconstructionSet rs = assemble_operators(ext, build_stencils(ext));
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);

  for (int i : {3, 29, 57}) {
    const CellOperator& op = rs.ops[static_cast<std::size_t>(i)];
    std::vector<double> q(basis::kMaxCoeffs);
    for (double& c : q) c = coef(rng);
    auto feval = [&](Vec2 p) {
      double phi[basis::kMaxCoeffs];
      basis::eval(4, (p.x - op.center.x) / op.scale,
                  (p.y - op.center.y) / op.scale, phi);
      double acc = 0.0;
      for (int c = 0; c < basis::kMaxCoeffs; ++c)
        acc += q[static_cast<std::size_t>(c)] * phi[c];
      return acc;
    };
    auto avg = averages_of(ext, feval);
    const auto& members = rs.stencils.cells[static_cast<std::size_t>(i)].big;
    Polynomial p = apply_operator(rs, i, 0, gather(avg, members));
    REQUIRE(p.coeffs.size() == static_cast<std::size_t>(basis::kMaxCoeffs));
    for (int c = 0; c < basis::kMaxCoeffs; ++c)
      CHECK(p.coeffs[static_cast<std::size_t>(c)] ==
            doctest::Approx(q[static_cast<std::size_t>(c)]).epsilon(1e-11));
  }
}

TEST_CASE("reconstruction conserves the target cell average") {
  Mesh m = read_mesh(mesh_dir() + "/square2pi_m58.mesh");
  ExtendedMesh ext = extend_for_exact_boundaries(m);
  ReconstructionSet rs = assemble_operators(ext, build_stencils(ext));
  auto avg = averages_of(ext, [](Vec2 p) { return std::sin(p.x) + 0.3 * p.y; });
  for (int i = 0; i < ext.real_count; i += 5) {
    const CellStencil& st = rs.stencils.cells[static_cast<std::size_t>(i)];
    auto v = ext.cell_nodes[static_cast<std::size_t>(i)];
    for (int mstencil = 0; mstencil < 5; ++mstencil) {
      const auto& members =
          mstencil == 0 ? st.big : st.small[static_cast<std::size_t>(mstencil - 1)];
      if (members.empty()) continue;
      Polynomial p = apply_operator(rs, i, mstencil, gather(avg, members));
      double mean = TriangleQuadrature::average(
          v[0], v[1], v[2], [&](Vec2 q) { return p.eval(q); });
      double target = avg[static_cast<std::size_t>(i)];
      CHECK(std::abs(mean - target) <= 1e-13 * std::max(1.0, std::abs(target)));
    }
  }
}

TEST_CASE("polynomial evaluation basics") {
  Polynomial c;
  c.degree = 0;
  c.center = {2.0, 3.0};
  c.scale = 0.5;
  c.coeffs = {7.5};
  CHECK(c.eval({-10.0, 4.0}) == 7.5);

  Polynomial xi;
  xi.degree = 1;
  xi.center = {2.0, 3.0};
  xi.scale = 0.5;
  xi.coeffs = {0.0, 1.0, 0.0};
  CHECK(xi.eval({2.0, 3.0}) == 0.0);  // local coordinates vanish at center
  CHECK(xi.eval({2.5, 3.0}) == doctest::Approx(1.0).epsilon(1e-15));

  // quartic against a term-by-term summation oracle
  Polynomial q;
  q.degree = 4;
  q.center = {0.3, -0.2};
  q.scale = 1.7;
  q.coeffs.resize(15);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (double& v : q.coeffs) v = d(rng);
  Vec2 at{1.1, 0.7};
  double xi_v = (at.x - q.center.x) / q.scale;
  double eta_v = (at.y - q.center.y) / q.scale;
  double oracle = 0.0;
  for (int c = 0; c < 15; ++c) {
    auto [a, b] = basis::exponents(c);
    oracle += q.coeffs[static_cast<std::size_t>(c)] * std::pow(xi_v, a) *
              std::pow(eta_v, b);
  }
  CHECK(q.eval(at) == doctest::Approx(oracle).epsilon(1e-15));
}

TEST_CASE("operators are invariant under large mesh translation") {
  Mesh m = read_mesh(mesh_dir() + "/square2pi_m58.mesh");
  Mesh shifted = m;
  for (Vec2& p : shifted.nodes) p += Vec2{1e6, 1e6};
  // rebuild geometry through the parser to keep invariants checked
  shifted = parse_mesh(format_mesh(shifted));

  ExtendedMesh e1 = extend_for_exact_boundaries(m);
  ExtendedMesh e2 = extend_for_exact_boundaries(shifted);
  ReconstructionSet r1 = assemble_operators(e1, build_stencils(e1));
  ReconstructionSet r2 = assemble_operators(e2, build_stencils(e2));

  auto f = [](Vec2 p) { return std::sin(0.7 * p.x) * std::cos(0.4 * p.y); };
  auto avg1 = averages_of(e1, f);
  auto avg2 = averages_of(e2, [&](Vec2 p) { return f(p - Vec2{1e6, 1e6}); });
  for (int i : {11, 40}) {
    const auto& members1 = r1.stencils.cells[static_cast<std::size_t>(i)].big;
    const auto& members2 = r2.stencils.cells[static_cast<std::size_t>(i)].big;
    REQUIRE(members1 == members2);
    Polynomial p1 = apply_operator(r1, i, 0, gather(avg1, members1));
    Polynomial p2 = apply_operator(r2, i, 0, gather(avg2, members2));
    Vec2 at = e1.geometry(i).centroid + Vec2{0.2, -0.1};
    double v1 = p1.eval(at);
    double v2 = p2.eval(at + Vec2{1e6, 1e6});
    CHECK(v2 == doctest::Approx(v1).epsilon(1e-8));
  }
}

TEST_CASE("identical meshes give bit-identical operators") {
  Mesh m = read_mesh(mesh_dir() + "/square2pi_m58.mesh");
  ExtendedMesh ext = extend_for_exact_boundaries(m);
  ReconstructionSet a = assemble_operators(ext, build_stencils(ext));
  ReconstructionSet b = assemble_operators(ext, build_stencils(ext));
  for (int i = 0; i < ext.real_count; ++i) {
    const auto& oa = a.ops[static_cast<std::size_t>(i)];
    const auto& ob = b.ops[static_cast<std::size_t>(i)];
    REQUIRE(oa.big_op.size() == ob.big_op.size());
    for (Eigen::Index k = 0; k < oa.big_op.size(); ++k)
      CHECK(oa.big_op.data()[k] == ob.big_op.data()[k]);
  }
}

TEST_CASE("rank deficiency is reported for degenerate stencil geometry") {
  // a fan of three triangles whose centroids share one line
  Mesh m = parse_mesh(
      "5 3 5\n0 0\n1 0\n2 0\n3 0\n1.5 2\n0 1 4\n1 2 4\n2 3 4\n"
      "0 1 WALL\n1 2 WALL\n2 3 WALL\n0 4 WALL\n3 4 WALL\n");
  ExtendedMesh ext = extend_for_exact_boundaries(m);
  CHECK_THROWS_AS(assemble_operators(ext, build_stencils(ext)),
                  RankDeficiencyError);
}

TEST_SUITE_END();
