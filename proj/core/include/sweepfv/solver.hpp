#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sweepfv/errors.hpp"
#include "sweepfv/euler.hpp"
#include "sweepfv/geometry.hpp"
#include "sweepfv/mesh.hpp"
#include "sweepfv/stencil.hpp"
#include "sweepfv/sweep.hpp"
#include "sweepfv/weno.hpp"

namespace sweepfv {

struct StateField {
  std::vector<State> u;
  std::uint64_t generation = 0;
};

enum class Driver { FeJacobi, Rk3Jacobi, FeFastSweep };

std::string_view to_string(Driver d);
Driver parse_driver(std::string_view name);

struct SolverConfig {
  Driver driver = Driver::FeFastSweep;
  double cfl = 0.6;
  std::optional<double> delta;  // defaults to the case's threshold
  long max_iterations = 500000;
  WenoConfig weno;
  bool global_alpha = false;
  std::optional<std::array<Vec2, 4>> reference_points;
  int threads = 1;
};

struct IterationRecord {
  double res_a = 0.0;
  double dt = 0.0;
};

struct IterationReport {
  long iterations = 0;
  std::vector<IterationRecord> history;
  bool converged = false;
  bool diverged = false;
  std::string failure;  // diagnostic when the run aborted
  double seconds = 0.0;  // iteration loop only
  StateField field;
};

/// The semi-discrete operator: WENO reconstruction, Lax-Friedrichs edge
/// fluxes on three-point Gauss rules, and source averages, assembled once
/// per mesh and case. Immutable after construction except for the Jacobi
/// reconstruction cache filled by prepare().
class Discretization {
 public:
  Discretization(Mesh mesh, Case prob, WenoConfig weno = {},
                 bool global_alpha = false, int threads = 1);

  int size() const { return mesh_.cell_count(); }
  const Mesh& mesh() const { return mesh_; }
  const Case& problem() const { return case_; }
  const ReconstructionSet& reconstruction() const { return recon_; }
  const ExtendedMesh& extension() const { return ext_; }
  std::span<const State> ghost_states() const { return ghost_avg_; }
  const WenoConfig& weno() const { return weno_; }

  /// Rate for cell i with all reconstructions taken fresh from `field`
  /// (the Gauss-Seidel path).
  Vec4 rate_fresh(std::span<const State> field, int i) const;

  /// Cache the whole field's reconstructions (the Jacobi path), then
  /// evaluate rates against the cache.
  void prepare(std::span<const State> field);
  Vec4 rate(std::span<const State> field, int i) const;

  /// CFL time step from cell-average wave speeds.
  double compute_dt(std::span<const State> field, double cfl) const;

  /// Exact-solution cell averages, or the case's uniform start state.
  std::vector<State> initial_field() const;

  Vec4 source_mean(int i) const {
    return source_avg_[static_cast<std::size_t>(i)];
  }

 private:
  struct EdgeCtx {
    EdgeRef nbr;
    double len = 0.0;
    Vec2 normal;
    std::array<Vec2, 3> points;
  };

  Vec4 rate_impl(std::span<const State> field, int i,
                 const CellReconstruction& self,
                 const CellReconstruction* neighbor_cache) const;
  CellReconstruction reconstruct(std::span<const State> field, int i) const;

  Mesh mesh_;
  Case case_;
  WenoConfig weno_;
  bool global_alpha_ = false;
  int threads_ = 1;
  ExtendedMesh ext_;
  ReconstructionSet recon_;
  std::vector<State> ghost_avg_;
  std::vector<Vec4> source_avg_;
  std::vector<std::array<EdgeCtx, 3>> edges_;
  std::array<const BoundaryRule*, 5> rules_{};
  std::vector<CellReconstruction> cache_;
  double alpha_bound_ = 0.0;  // refreshed per prepare() when global_alpha_
 public:
  void refresh_global_alpha(std::span<const State> field);
};

/// Mean absolute per-cell, per-component update rate.
double residue_res_a(std::span<const State> prev, std::span<const State> next,
                     double dt);

/// One forward-Euler Jacobi step: the whole field advances from generation-n
/// data regardless of visitation order.
template <class Op>
void fe_jacobi_step(Op& op, std::vector<State>& u, double dt,
                    std::vector<State>& scratch) {
  op.prepare(u);
  const int m = op.size();
  scratch.resize(u.size());
  for (int i = 0; i < m; ++i)
    scratch[static_cast<std::size_t>(i)] =
        u[static_cast<std::size_t>(i)] + dt * op.rate(u, i);
  u.swap(scratch);
}

/// One TVD-RK3 step built from three full-field Jacobi stages.
template <class Op>
void rk3_jacobi_step(Op& op, std::vector<State>& u, double dt,
                     std::vector<State>& s1, std::vector<State>& s2) {
  const int m = op.size();
  s1.resize(u.size());
  s2.resize(u.size());
  op.prepare(u);
  for (int i = 0; i < m; ++i) {
    auto k = static_cast<std::size_t>(i);
    s1[k] = u[k] + dt * op.rate(u, i);
  }
  op.prepare(s1);
  for (int i = 0; i < m; ++i) {
    auto k = static_cast<std::size_t>(i);
    s2[k] = 0.75 * u[k] + 0.25 * s1[k] + (0.25 * dt) * op.rate(s1, i);
  }
  op.prepare(s2);
  for (int i = 0; i < m; ++i) {
    auto k = static_cast<std::size_t>(i);
    u[k] = (1.0 / 3.0) * u[k] + (2.0 / 3.0) * s2[k] +
           (2.0 / 3.0 * dt) * op.rate(s2, i);
  }
}

/// One Gauss-Seidel sweep along the given ordering; each update sees every
/// value already written earlier in the sweep. dt stays fixed for the whole
/// sweep.
template <class Op>
void gauss_seidel_sweep(Op& op, std::vector<State>& u,
                        std::span<const int> ordering, double dt) {
  for (std::size_t pos = 0; pos < ordering.size(); ++pos) {
    int i = ordering[pos];
    try {
      u[static_cast<std::size_t>(i)] += dt * op.rate_fresh(u, i);
    } catch (const NonPhysicalStateError& e) {
      throw NonPhysicalStateError("sweep position " + std::to_string(pos) +
                                  ", cell " + std::to_string(i) + ": " +
                                  e.what());
    }
  }
}

/// Drive the configured iteration until ResA <= delta, divergence, or the
/// iteration cap. One iteration = one full update of all cells (one FE or
/// RK3 step, or one directional sweep).
IterationReport run_to_convergence(Discretization& disc,
                                   const SweepOrderings& orderings,
                                   const SolverConfig& cfg);

struct ErrorNorms {
  double l1 = 0.0;
  double linf = 0.0;
};

/// Area-weighted L1 and max-norm density errors of cell averages.
ErrorNorms density_error_norms(const Mesh& mesh, std::span<const State> u,
                               std::span<const State> exact_avg);

}  // namespace sweepfv
