#include "sweepfv/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "sweepfv/errors.hpp"
#include "sweepfv/quadrature.hpp"

namespace sweepfv {

namespace basis {

namespace {
struct ExpTable {
  std::array<std::array<int, 2>, kMaxCoeffs> e{};
  constexpr ExpTable() {
    int c = 0;
    for (int d = 0; d <= kMaxDegree; ++d)
      for (int a = d; a >= 0; --a) e[static_cast<std::size_t>(c++)] = {a, d - a};
  }
};
constexpr ExpTable kExp;
}  // namespace

std::array<int, 2> exponents(int c) {
  return kExp.e[static_cast<std::size_t>(c)];
}

void eval(int degree, double xi, double eta, double* out) {
  double xp[kMaxDegree + 1], yp[kMaxDegree + 1];
  xp[0] = yp[0] = 1.0;
  for (int k = 1; k <= degree; ++k) {
    xp[k] = xp[k - 1] * xi;
    yp[k] = yp[k - 1] * eta;
  }
  int n = coeff_count(degree);
  for (int c = 0; c < n; ++c) {
    auto [a, b] = kExp.e[static_cast<std::size_t>(c)];
    out[c] = xp[a] * yp[b];
  }
}

double eval_derivative(int c, int dx, int dy, double xi, double eta) {
  auto [a, b] = kExp.e[static_cast<std::size_t>(c)];
  if (dx > a || dy > b) return 0.0;
  double fac = 1.0;
  for (int k = 0; k < dx; ++k) fac *= static_cast<double>(a - k);
  for (int k = 0; k < dy; ++k) fac *= static_cast<double>(b - k);
  return fac * std::pow(xi, a - dx) * std::pow(eta, b - dy);
}

}  // namespace basis

double Polynomial::eval(Vec2 p) const {
  double xi = (p.x - center.x) / scale;
  double eta = (p.y - center.y) / scale;
  double phi[basis::kMaxCoeffs];
  basis::eval(degree, xi, eta, phi);
  double acc = 0.0;
  int n = basis::coeff_count(degree);
  for (int c = 0; c < n; ++c) acc += coeffs[static_cast<std::size_t>(c)] * phi[c];
  return acc;
}

namespace {

// direction d from the target barycenter lies in sector k, bounded by the
// rays through vertices k and k+1
int sector_of(const std::array<Vec2, 3>& rays, Vec2 d) {
  for (int k = 0; k < 3; ++k) {
    Vec2 r0 = rays[static_cast<std::size_t>(k)];
    Vec2 r1 = rays[static_cast<std::size_t>((k + 1) % 3)];
    if (cross(r0, d) >= 0.0 && cross(d, r1) >= 0.0) return k;
  }
  // fall back to the nearest ray boundary (collinear opposite direction)
  return cross(rays[0], d) >= 0.0 ? 0 : 2;
}

std::array<int, 3> neighbor_ids(const ExtendedMesh& ext, int i) {
  std::array<int, 3> out{-1, -1, -1};
  for (int k = 0; k < 3; ++k) {
    EdgeRef e = ext.edge_neighbors[static_cast<std::size_t>(i)]
                                  [static_cast<std::size_t>(k)];
    if (!e.is_boundary()) out[static_cast<std::size_t>(k)] = e.cell_index();
  }
  return out;
}

}  // namespace

StencilSet build_stencils(const ExtendedMesh& ext) {
  StencilSet set;
  set.cells.resize(static_cast<std::size_t>(ext.real_count));

  for (int i = 0; i < ext.real_count; ++i) {
    CellStencil& st = set.cells[static_cast<std::size_t>(i)];
    const Vec2 bc = ext.geometry(i).centroid;
    const auto verts = ext.cell_nodes[static_cast<std::size_t>(i)];
    const std::array<Vec2, 3> rays = {verts[0] - bc, verts[1] - bc,
                                      verts[2] - bc};

    const std::array<int, 3> first = neighbor_ids(ext, i);

    // central sub-stencil: target plus its edge neighbors
    auto& central = st.small[3];
    central.push_back(i);
    for (int k = 0; k < 3; ++k)
      if (first[static_cast<std::size_t>(k)] >= 0)
        central.push_back(first[static_cast<std::size_t>(k)]);
    if (central.size() < 3) central.clear();

    // second layer: the other neighbors of each first-layer cell, grouped
    // by the sector containing their barycenter
    auto in_stencil = [&](const std::vector<int>& v, int c) {
      return std::find(v.begin(), v.end(), c) != v.end();
    };
    std::vector<int> second;                    // expansion order
    std::vector<int> parent_of;                 // first-layer parent
    std::array<std::vector<int>, 3> by_sector;
    for (int k = 0; k < 3; ++k) {
      int f = first[static_cast<std::size_t>(k)];
      if (f < 0) continue;
      for (int c : neighbor_ids(ext, f)) {
        if (c < 0 || c == i) continue;
        if (std::find(first.begin(), first.end(), c) != first.end()) continue;
        if (in_stencil(second, c)) continue;
        second.push_back(c);
        parent_of.push_back(f);
        int s = sector_of(rays, ext.geometry(c).centroid - bc);
        by_sector[static_cast<std::size_t>(s)].push_back(c);
      }
    }

    for (int k = 0; k < 3; ++k) {
      int f = first[static_cast<std::size_t>(k)];
      if (f < 0) continue;  // sub-stencil dropped without its anchor
      auto& sub = st.small[static_cast<std::size_t>(k)];
      sub.push_back(i);
      sub.push_back(f);
      for (int c : by_sector[static_cast<std::size_t>(k)]) sub.push_back(c);
      if (sub.size() < 3) sub.clear();
    }

    // big stencil: layers one and two, plus per second-layer cell the
    // non-parent neighbor farthest from the target centroid
    auto& big = st.big;
    big.push_back(i);
    for (int k = 0; k < 3; ++k)
      if (first[static_cast<std::size_t>(k)] >= 0)
        big.push_back(first[static_cast<std::size_t>(k)]);
    for (int c : second)
      if (!in_stencil(big, c)) big.push_back(c);
    for (std::size_t s = 0; s < second.size(); ++s) {
      int best = -1;
      double best_d = -1.0;
      for (int c : neighbor_ids(ext, second[s])) {
        if (c < 0 || c == parent_of[s]) continue;
        Vec2 d = ext.geometry(c).centroid - bc;
        double dist = dot(d, d);
        if (dist > best_d || (dist == best_d && c < best)) {
          best = c;
          best_d = dist;
        }
      }
      if (best >= 0 && !in_stencil(big, best)) big.push_back(best);
    }

    // grow by whole adjacency layers until 16 distinct members
    std::vector<int> frontier = big;
    while (big.size() < 16) {
      std::set<int> next;
      for (int c : frontier)
        for (int nb : neighbor_ids(ext, c))
          if (nb >= 0 && !in_stencil(big, nb)) next.insert(nb);
      if (next.empty()) break;
      frontier.assign(next.begin(), next.end());
      big.insert(big.end(), frontier.begin(), frontier.end());
    }

    int members = static_cast<int>(big.size());
    int degree = basis::kMaxDegree;
    while (degree > 0 && members < basis::coeff_count(degree)) --degree;
    st.big_degree = degree;
    st.degraded = degree < basis::kMaxDegree ||
                  std::any_of(st.small.begin(), st.small.end(),
                              [](const auto& v) { return v.empty(); });
  }
  return set;
}

namespace {

// integral mean of each basis monomial of the target-local frame over an
// arbitrary cell of the extension
void moment_row(const ExtendedMesh& ext, int cell, Vec2 center, double h,
                int degree, double* out) {
  const auto& v = ext.cell_nodes[static_cast<std::size_t>(cell)];
  const int n = basis::coeff_count(degree);
  for (int c = 0; c < n; ++c) out[c] = 0.0;
  for (const auto& node : TriangleQuadrature::nodes()) {
    Vec2 p = v[0] + node.b1 * (v[1] - v[0]) + node.b2 * (v[2] - v[0]);
    double phi[basis::kMaxCoeffs];
    basis::eval(degree, (p.x - center.x) / h, (p.y - center.y) / h, phi);
    for (int c = 0; c < n; ++c) out[c] += node.w * phi[c];
  }
}

// operator for one stencil (target first): constraint elimination of the
// constant coefficient, then a pseudo-inverse of the reduced design matrix.
// Rows carry inverse-distance weights so that far members regularize the
// fit without dominating it; this keeps the quartic fit stable on
// irregular meshes.
Eigen::MatrixXd constrained_lsq(const ExtendedMesh& ext,
                                const std::vector<int>& members, Vec2 center,
                                double h, int degree, int cell, int m) {
  const int n = basis::coeff_count(degree);
  const int rows = static_cast<int>(members.size()) - 1;

  double mu[basis::kMaxCoeffs];
  moment_row(ext, members[0], center, h, degree, mu);

  Eigen::MatrixXd design(std::max(rows, 1), std::max(n - 1, 1));
  design.setZero();
  Eigen::VectorXd weight(std::max(rows, 1));
  for (int r = 0; r < rows; ++r) {
    int j = members[static_cast<std::size_t>(r + 1)];
    double row[basis::kMaxCoeffs];
    moment_row(ext, j, center, h, degree, row);
    Vec2 d = ext.geometry(j).centroid - center;
    weight(r) = 1.0 / dot(d, d);
    for (int c = 1; c < n; ++c)
      design(r, c - 1) = weight(r) * (row[c] - mu[c]);
  }

  Eigen::MatrixXd op = Eigen::MatrixXd::Zero(n, members.size());
  if (n == 1) {
    op(0, 0) = 1.0;
    return op;
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  double tol = 1e-10 * sv(0);
  if (sv(sv.size() - 1) <= tol)
    throw RankDeficiencyError("cell " + std::to_string(cell) + " stencil " +
                              std::to_string(m) + ": rank " +
                              std::to_string((sv.array() > tol).count()) +
                              " < " + std::to_string(n - 1));
  // P = V S^-1 U^T W maps (avg_j - avg_target) to non-constant coefficients
  Eigen::MatrixXd p = svd.matrixV() * sv.cwiseInverse().asDiagonal() *
                      svd.matrixU().transpose() * weight.asDiagonal();
  for (int c = 1; c < n; ++c) {
    double rowsum = 0.0;
    for (int r = 0; r < rows; ++r) {
      op(c, r + 1) = p(c - 1, r);
      rowsum += p(c - 1, r);
    }
    op(c, 0) = -rowsum;
  }
  // constant coefficient from the target-average constraint
  op(0, 0) = 1.0;
  for (int c = 1; c < n; ++c)
    for (int j = 0; j < static_cast<int>(members.size()); ++j)
      op(0, j) -= mu[c] * op(c, j);
  return op;
}

// quadratic form of the smoothness measure: sum over derivative
// multi-indices 1..degree of the integral mean of (D phi_c)(D phi_c') over
// the target cell, all in the scaled local frame
Eigen::MatrixXd smoothness_form(const ExtendedMesh& ext, int cell, Vec2 center,
                                double h, int degree) {
  const int n = basis::coeff_count(degree);
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  const auto& v = ext.cell_nodes[static_cast<std::size_t>(cell)];
  double dval[basis::kMaxCoeffs];
  for (const auto& node : TriangleQuadrature::nodes()) {
    Vec2 p = v[0] + node.b1 * (v[1] - v[0]) + node.b2 * (v[2] - v[0]);
    double xi = (p.x - center.x) / h;
    double eta = (p.y - center.y) / h;
    for (int total = 1; total <= degree; ++total) {
      for (int dx = total; dx >= 0; --dx) {
        int dy = total - dx;
        for (int c = 0; c < n; ++c)
          dval[c] = basis::eval_derivative(c, dx, dy, xi, eta);
        for (int c = 0; c < n; ++c) {
          if (dval[c] == 0.0) continue;
          for (int c2 = c; c2 < n; ++c2)
            q(c, c2) += node.w * dval[c] * dval[c2];
        }
      }
    }
  }
  for (int c = 0; c < n; ++c)
    for (int c2 = 0; c2 < c; ++c2) q(c, c2) = q(c2, c);
  return q;
}

}  // namespace

ReconstructionSet assemble_operators(const ExtendedMesh& ext,
                                     StencilSet stencils) {
  ReconstructionSet rs;
  rs.stencils = std::move(stencils);
  rs.ops.resize(rs.stencils.cells.size());
  for (int i = 0; i < ext.real_count; ++i) {
    const CellStencil& st = rs.stencils.cells[static_cast<std::size_t>(i)];
    CellOperator& op = rs.ops[static_cast<std::size_t>(i)];
    op.center = ext.geometry(i).centroid;
    op.scale = std::sqrt(ext.geometry(i).area);
    op.big_degree = st.big_degree;
    op.big_op = constrained_lsq(ext, st.big, op.center, op.scale,
                                st.big_degree, i, 0);
    op.smooth_big = smoothness_form(ext, i, op.center, op.scale, st.big_degree);
    for (int m = 0; m < 4; ++m) {
      const auto& sub = st.small[static_cast<std::size_t>(m)];
      if (sub.empty()) continue;
      op.small_op[static_cast<std::size_t>(m)] =
          constrained_lsq(ext, sub, op.center, op.scale, 1, i, m + 1);
    }
  }
  return rs;
}

Polynomial apply_operator(const ReconstructionSet& rs, int cell, int m,
                          std::span<const double> averages) {
  const auto& op = rs.ops[static_cast<std::size_t>(cell)];
  const Eigen::MatrixXd& mat =
      m == 0 ? op.big_op : op.small_op[static_cast<std::size_t>(m - 1)];
  Polynomial p;
  p.degree = m == 0 ? op.big_degree : 1;
  p.cell = cell;
  p.center = op.center;
  p.scale = op.scale;
  p.coeffs.assign(static_cast<std::size_t>(mat.rows()), 0.0);
  for (int c = 0; c < mat.rows(); ++c) {
    double acc = 0.0;
    for (int j = 0; j < mat.cols(); ++j)
      acc += mat(c, j) * averages[static_cast<std::size_t>(j)];
    p.coeffs[static_cast<std::size_t>(c)] = acc;
  }
  return p;
}

}  // namespace sweepfv
