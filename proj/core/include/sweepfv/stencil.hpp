#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sweepfv/geometry.hpp"
#include "sweepfv/mesh.hpp"

namespace sweepfv {

/// Scaled local monomial basis on a cell: xi = (x - cx)/h, eta = (y - cy)/h
/// with h = sqrt(area). Ordered by total degree: 1, xi, eta, xi^2, xi eta,
/// eta^2, ...
namespace basis {

constexpr int coeff_count(int degree) {
  return (degree + 1) * (degree + 2) / 2;
}
constexpr int kMaxDegree = 4;
constexpr int kMaxCoeffs = coeff_count(kMaxDegree);

/// Exponent pair (a, b) of monomial c.
std::array<int, 2> exponents(int c);

/// Values of the first coeff_count(degree) monomials at (xi, eta).
void eval(int degree, double xi, double eta, double* out);

/// Value of D^(dx,dy) of monomial c at (xi, eta).
double eval_derivative(int c, int dx, int dy, double xi, double eta);

}  // namespace basis

/// A reconstruction polynomial in a cell's scaled local frame.
struct Polynomial {
  int degree = 0;
  int cell = -1;
  Vec2 center;
  double scale = 1.0;
  std::vector<double> coeffs;

  double eval(Vec2 p) const;
};

/// Stencil membership for one cell. The target cell is always member 0.
/// small[0..2] are the sectorial sub-stencils, small[3] the central one;
/// an empty vector marks a dropped sub-stencil.
struct CellStencil {
  std::vector<int> big;
  std::array<std::vector<int>, 4> small;
  int big_degree = basis::kMaxDegree;
  bool degraded = false;
};

struct StencilSet {
  std::vector<CellStencil> cells;
};

/// Build stencils for every real cell of the extension: central and
/// sectorial sub-stencils from the first two neighbor layers, and the big
/// stencil extended to at least 16 distinct members where the mesh allows.
StencilSet build_stencils(const ExtendedMesh& ext);

/// Precomputed least-squares maps and smoothness forms for one cell.
/// Coefficients = op * (cell averages in member order); the target-cell
/// average constraint is eliminated exactly into the operator.
struct CellOperator {
  Vec2 center;
  double scale = 1.0;
  int big_degree = basis::kMaxDegree;
  Eigen::MatrixXd big_op;                    // n_big x |big|
  std::array<Eigen::MatrixXd, 4> small_op;   // 3 x |small_m|, empty if dropped
  Eigen::MatrixXd smooth_big;                // quadratic form, n_big x n_big
};

struct ReconstructionSet {
  StencilSet stencils;
  std::vector<CellOperator> ops;
};

/// Assemble all per-cell operators. Throws RankDeficiencyError when a
/// reduced design matrix falls below numerical full rank (singular values
/// under 1e-10 of the largest).
ReconstructionSet assemble_operators(const ExtendedMesh& ext,
                                     StencilSet stencils);

/// Apply one stencil operator (m = 0 big, 1..4 small) to scalar averages
/// given in member order; returns the reconstruction polynomial.
Polynomial apply_operator(const ReconstructionSet& rs, int cell, int m,
                          std::span<const double> averages);

}  // namespace sweepfv
