#pragma once

#include <array>
#include <span>

#include <Eigen/Dense>

#include "sweepfv/geometry.hpp"
#include "sweepfv/stencil.hpp"

namespace sweepfv {

struct WenoConfig {
  // one big-stencil weight plus four sub-stencil weights, sum 1
  std::array<double, 5> linear_weights{0.96, 0.01, 0.01, 0.01, 0.01};
  double epsilon = 1e-6;
};

/// Diagnostics of one cell reconstruction, per conservative component.
struct WenoWorkspace {
  std::array<std::array<double, 5>, 4> beta{};
  std::array<double, 4> tau{};
  std::array<std::array<double, 5>, 4> omega{};
};

/// Smoothness measure of a reconstruction polynomial over its cell: the sum
/// over derivative orders 1..degree of the area-scaled integrals of squared
/// physical derivatives. Direct quadrature evaluation; the solver path uses
/// the precomputed quadratic forms instead.
double smoothness_indicator(const Polynomial& p,
                            const std::array<Vec2, 3>& cell_vertices);

/// Z-type nonlinear weights from the linear weights and five smoothness
/// values. Weights are nonnegative and sum to 1; equal smoothness gives back
/// the linear weights exactly.
std::array<double, 5> nonlinear_weights(const WenoConfig& cfg,
                                        const std::array<double, 5>& beta);

/// Reads cell averages across the real field and the ghost extension.
struct FieldView {
  std::span<const State> real;
  std::span<const State> ghost;

  State operator()(int id) const {
    return id < static_cast<int>(real.size())
               ? real[static_cast<std::size_t>(id)]
               : ghost[static_cast<std::size_t>(id) - real.size()];
  }
};

/// The blended reconstruction of one cell: a single coefficient set per
/// conservative component in the cell's local frame, valid anywhere in the
/// cell (the nonlinear weights are computed once per cell).
struct CellReconstruction {
  Vec2 center;
  double scale = 1.0;
  int degree = 0;
  Eigen::Matrix<double, basis::kMaxCoeffs, 4> coef;

  State eval(Vec2 p) const;
};

CellReconstruction reconstruct_cell(const ReconstructionSet& rs,
                                    const WenoConfig& cfg, int cell,
                                    const FieldView& field,
                                    WenoWorkspace* diag = nullptr);

}  // namespace sweepfv
