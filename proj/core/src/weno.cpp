#include "sweepfv/weno.hpp"

#include <cmath>

#include "sweepfv/quadrature.hpp"

namespace sweepfv {

double smoothness_indicator(const Polynomial& p,
                            const std::array<Vec2, 3>& cell_vertices) {
  // beta = sum_{1<=|a|<=r} integral_cell area^(|a|-1) (D^a p)^2, derivatives
  // in physical coordinates; chain rule brings a scale^-|a| per order
  const Vec2 v0 = cell_vertices[0];
  const Vec2 v1 = cell_vertices[1];
  const Vec2 v2 = cell_vertices[2];
  const double area = 0.5 * std::abs(cross(v1 - v0, v2 - v0));
  const int n = basis::coeff_count(p.degree);
  double beta = 0.0;
  for (int total = 1; total <= p.degree; ++total) {
    for (int dx = total; dx >= 0; --dx) {
      int dy = total - dx;
      double integral = area * TriangleQuadrature::average(v0, v1, v2,
          [&](Vec2 q) {
            double xi = (q.x - p.center.x) / p.scale;
            double eta = (q.y - p.center.y) / p.scale;
            double d = 0.0;
            for (int c = 0; c < n; ++c)
              d += p.coeffs[static_cast<std::size_t>(c)] *
                   basis::eval_derivative(c, dx, dy, xi, eta);
            return d * d;
          });
    double phys_scale = std::pow(p.scale, -2.0 * total);
    beta += std::pow(area, total - 1) * phys_scale * integral;
    }
  }
  return beta;
}

namespace {

// weights over the active stencils only; inactive entries get gamma 0 and
// drop out
std::array<double, 5> z_weights(const std::array<double, 5>& gamma,
                                const std::array<double, 5>& beta,
                                double epsilon,
                                const std::array<bool, 5>& active) {
  double diff_sum = 0.0;
  int count = 0;
  for (int m = 1; m < 5; ++m) {
    if (!active[static_cast<std::size_t>(m)]) continue;
    diff_sum += std::abs(beta[0] - beta[static_cast<std::size_t>(m)]);
    ++count;
  }
  double tau = 0.0;
  if (count > 0) {
    double mean = diff_sum / static_cast<double>(count);
    tau = mean * mean;
  }
  std::array<double, 5> w{};
  double sum = 0.0;
  for (int m = 0; m < 5; ++m) {
    if (!active[static_cast<std::size_t>(m)]) continue;
    double g = gamma[static_cast<std::size_t>(m)];
    w[static_cast<std::size_t>(m)] =
        g * (1.0 + tau / (epsilon + beta[static_cast<std::size_t>(m)]));
    sum += w[static_cast<std::size_t>(m)];
  }
  for (double& x : w) x /= sum;
  return w;
}

}  // namespace

std::array<double, 5> nonlinear_weights(const WenoConfig& cfg,
                                        const std::array<double, 5>& beta) {
  return z_weights(cfg.linear_weights, beta, cfg.epsilon,
                   {true, true, true, true, true});
}

State CellReconstruction::eval(Vec2 p) const {
  double phi[basis::kMaxCoeffs];
  basis::eval(degree, (p.x - center.x) / scale, (p.y - center.y) / scale, phi);
  const int n = basis::coeff_count(degree);
  State out;
  for (int comp = 0; comp < 4; ++comp) {
    double acc = 0.0;
    for (int c = 0; c < n; ++c) acc += phi[c] * coef(c, comp);
    out[comp] = acc;
  }
  return out;
}

CellReconstruction reconstruct_cell(const ReconstructionSet& rs,
                                    const WenoConfig& cfg, int cell,
                                    const FieldView& field,
                                    WenoWorkspace* diag) {
  const CellStencil& st = rs.stencils.cells[static_cast<std::size_t>(cell)];
  const CellOperator& op = rs.ops[static_cast<std::size_t>(cell)];

  CellReconstruction rec;
  rec.center = op.center;
  rec.scale = op.scale;
  rec.degree = op.big_degree;
  rec.coef.setZero();

  const int n_big = basis::coeff_count(op.big_degree);

  // big-stencil fit
  Eigen::Matrix<double, Eigen::Dynamic, 4, 0, 64, 4> avg(
      static_cast<Eigen::Index>(st.big.size()), 4);
  for (std::size_t j = 0; j < st.big.size(); ++j) {
    State s = field(st.big[j]);
    for (int comp = 0; comp < 4; ++comp)
      avg(static_cast<Eigen::Index>(j), comp) = s[comp];
  }
  Eigen::Matrix<double, Eigen::Dynamic, 4, 0, basis::kMaxCoeffs, 4> cbig(n_big,
                                                                         4);
  cbig.noalias() = op.big_op * avg;

  // sub-stencil fits
  std::array<bool, 5> active{true, false, false, false, false};
  std::array<Eigen::Matrix<double, 3, 4>, 4> csmall;
  int n_active = 0;
  for (int m = 0; m < 4; ++m) {
    const auto& sub = st.small[static_cast<std::size_t>(m)];
    if (sub.empty()) continue;
    active[static_cast<std::size_t>(m + 1)] = true;
    ++n_active;
    Eigen::Matrix<double, Eigen::Dynamic, 4, 0, 16, 4> savg(
        static_cast<Eigen::Index>(sub.size()), 4);
    for (std::size_t j = 0; j < sub.size(); ++j) {
      State s = field(sub[j]);
      for (int comp = 0; comp < 4; ++comp)
        savg(static_cast<Eigen::Index>(j), comp) = s[comp];
    }
    csmall[static_cast<std::size_t>(m)].noalias() =
        op.small_op[static_cast<std::size_t>(m)] * savg;
  }

  if (n_active == 0) {
    rec.coef.topRows(n_big) = cbig;
    if (diag) *diag = WenoWorkspace{};
    return rec;
  }

  // dropped sub-stencils: renormalize the remaining linear weights so that
  // they still sum to 1 - gamma_big
  std::array<double, 5> gamma{cfg.linear_weights[0], 0.0, 0.0, 0.0, 0.0};
  {
    double s_active = 0.0;
    for (int m = 1; m < 5; ++m)
      if (active[static_cast<std::size_t>(m)])
        s_active += cfg.linear_weights[static_cast<std::size_t>(m)];
    double rescale = (1.0 - cfg.linear_weights[0]) / s_active;
    for (int m = 1; m < 5; ++m)
      if (active[static_cast<std::size_t>(m)])
        gamma[static_cast<std::size_t>(m)] =
            cfg.linear_weights[static_cast<std::size_t>(m)] * rescale;
  }

  for (int comp = 0; comp < 4; ++comp) {
    std::array<double, 5> beta{};
    // big stencil: quadratic form over the target cell
    beta[0] = cbig.col(comp).dot(op.smooth_big * cbig.col(comp));
    // linear stencils: the form reduces to the squared local gradient
    for (int m = 0; m < 4; ++m) {
      if (!active[static_cast<std::size_t>(m + 1)]) continue;
      double gx = csmall[static_cast<std::size_t>(m)](1, comp);
      double gy = csmall[static_cast<std::size_t>(m)](2, comp);
      beta[static_cast<std::size_t>(m + 1)] = gx * gx + gy * gy;
    }
    std::array<double, 5> w = z_weights(gamma, beta, cfg.epsilon, active);
    if (diag) {
      diag->beta[static_cast<std::size_t>(comp)] = beta;
      diag->omega[static_cast<std::size_t>(comp)] = w;
      double diff = 0.0;
      int count = 0;
      for (int m = 1; m < 5; ++m)
        if (active[static_cast<std::size_t>(m)]) {
          diff += std::abs(beta[0] - beta[static_cast<std::size_t>(m)]);
          ++count;
        }
      double mean = count ? diff / count : 0.0;
      diag->tau[static_cast<std::size_t>(comp)] = mean * mean;
    }

    // u = w1 (p1/g1 - sum gm/g1 pm) + sum wm pm, collected per coefficient
    double wg = w[0] / gamma[0];
    for (int c = 0; c < n_big; ++c)
      rec.coef(c, comp) = wg * cbig(c, comp);
    for (int m = 0; m < 4; ++m) {
      if (!active[static_cast<std::size_t>(m + 1)]) continue;
      double f = w[static_cast<std::size_t>(m + 1)] -
                 wg * gamma[static_cast<std::size_t>(m + 1)];
      for (int c = 0; c < 3; ++c)
        rec.coef(c, comp) += f * csmall[static_cast<std::size_t>(m)](c, comp);
    }
  }
  return rec;
}

}  // namespace sweepfv
