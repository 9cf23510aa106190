#include "sweepfv/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>

#include "sweepfv/errors.hpp"
#include "sweepfv/quadrature.hpp"

namespace sweepfv {

std::string_view to_string(Driver d) {
  switch (d) {
    case Driver::FeJacobi: return "fe";
    case Driver::Rk3Jacobi: return "rk3";
    case Driver::FeFastSweep: return "sweep";
  }
  return "?";
}

Driver parse_driver(std::string_view name) {
  if (name == "fe") return Driver::FeJacobi;
  if (name == "rk3") return Driver::Rk3Jacobi;
  if (name == "sweep") return Driver::FeFastSweep;
  throw ConfigError("unknown driver '" + std::string(name) +
                    "' (expected fe, rk3, or sweep)");
}

namespace {

void parallel_for(int threads, int n, const std::function<void(int, int)>& fn) {
  if (threads <= 1 || n < 64) {
    fn(0, n);
    return;
  }
  int nt = std::min<int>(threads, std::thread::hardware_concurrency());
  nt = std::max(nt, 1);
  std::vector<std::thread> pool;
  int chunk = (n + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    int lo = t * chunk;
    int hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(fn, lo, hi);
  }
  for (auto& th : pool) th.join();
}

}  // namespace

Discretization::Discretization(Mesh mesh, Case prob, WenoConfig weno,
                               bool global_alpha, int threads)
    : mesh_(std::move(mesh)),
      case_(std::move(prob)),
      weno_(weno),
      global_alpha_(global_alpha),
      threads_(std::max(threads, 1)) {
  ext_ = extend_for_exact_boundaries(mesh_);
  recon_ = assemble_operators(ext_, build_stencils(ext_));
  ghost_avg_ = ghost_averages(ext_, case_);

  const int m = mesh_.cell_count();
  source_avg_.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    source_avg_[static_cast<std::size_t>(i)] = source_average(mesh_, i, case_);

  edges_.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    auto v = mesh_.cell_vertices(i);
    const CellGeometry& g = mesh_.geometry(i);
    for (int k = 0; k < 3; ++k) {
      EdgeCtx& e = edges_[static_cast<std::size_t>(i)]
                         [static_cast<std::size_t>(k)];
      e.nbr = mesh_.edge_neighbors[static_cast<std::size_t>(i)]
                                  [static_cast<std::size_t>(k)];
      e.len = g.edge_length[static_cast<std::size_t>(k)];
      e.normal = g.edge_normal[static_cast<std::size_t>(k)];
      e.points = edge_quadrature(v[static_cast<std::size_t>(k)],
                                 v[static_cast<std::size_t>((k + 1) % 3)])
                     .points;
    }
  }

  for (const auto& [tag, rule] : case_.boundary)
    rules_[static_cast<std::size_t>(tag)] = &rule;
  // fail fast if the mesh carries a tag the case has no rule for
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < 3; ++k) {
      EdgeRef e = mesh_.edge_neighbors[static_cast<std::size_t>(i)]
                                      [static_cast<std::size_t>(k)];
      if (e.is_boundary()) case_.rule_for(e.tag());
    }
}

CellReconstruction Discretization::reconstruct(std::span<const State> field,
                                               int i) const {
  return reconstruct_cell(recon_, weno_, i, FieldView{field, ghost_avg_});
}

void Discretization::prepare(std::span<const State> field) {
  cache_.resize(field.size());
  parallel_for(threads_, mesh_.cell_count(), [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i)
      cache_[static_cast<std::size_t>(i)] = reconstruct(field, i);
  });
  if (global_alpha_) refresh_global_alpha(field);
}

void Discretization::refresh_global_alpha(std::span<const State> field) {
  double a = 0.0;
  for (int i = 0; i < mesh_.cell_count(); ++i) {
    const State& s = field[static_cast<std::size_t>(i)];
    for (int k = 0; k < 3; ++k)
      a = std::max(a, max_wave_speed(
                          s,
                          edges_[static_cast<std::size_t>(i)]
                                [static_cast<std::size_t>(k)]
                                    .normal,
                          case_.gas));
  }
  alpha_bound_ = a;
}

Vec4 Discretization::rate_impl(std::span<const State> field, int i,
                               const CellReconstruction& self,
                               const CellReconstruction* neighbor_cache) const {
  static constexpr std::array<double, 3> kSigma = {5.0 / 18.0, 8.0 / 18.0,
                                                   5.0 / 18.0};
  const CellGeometry& g = mesh_.geometry(i);
  Vec4 acc;
  for (int k = 0; k < 3; ++k) {
    const EdgeCtx& e = edges_[static_cast<std::size_t>(i)]
                             [static_cast<std::size_t>(k)];
    CellReconstruction fresh;
    const CellReconstruction* other = nullptr;
    if (!e.nbr.is_boundary()) {
      if (neighbor_cache) {
        other = &neighbor_cache[e.nbr.cell_index()];
      } else {
        fresh = reconstruct(field, e.nbr.cell_index());
        other = &fresh;
      }
    }
    const BoundaryRule* rule =
        e.nbr.is_boundary()
            ? rules_[static_cast<std::size_t>(e.nbr.tag())]
            : nullptr;
    Vec4 edge_flux;
    for (int q = 0; q < 3; ++q) {
      Vec2 p = e.points[static_cast<std::size_t>(q)];
      State in = self.eval(p);
      State out = other ? other->eval(p)
                        : boundary_state(*rule, in, e.normal, p, case_.gas);
      Vec4 f = global_alpha_
                   ? lax_friedrichs(in, out, e.normal, case_.gas, alpha_bound_)
                   : lax_friedrichs(in, out, e.normal, case_.gas);
      edge_flux += kSigma[static_cast<std::size_t>(q)] * f;
    }
    acc += e.len * edge_flux;
  }
  Vec4 rate = source_avg_[static_cast<std::size_t>(i)];
  rate -= (1.0 / g.area) * acc;
  return rate;
}

Vec4 Discretization::rate_fresh(std::span<const State> field, int i) const {
  CellReconstruction self = reconstruct(field, i);
  return rate_impl(field, i, self, nullptr);
}

Vec4 Discretization::rate(std::span<const State> field, int i) const {
  return rate_impl(field, i, cache_[static_cast<std::size_t>(i)],
                   cache_.data());
}

double Discretization::compute_dt(std::span<const State> field,
                                  double cfl) const {
  double worst = 0.0;
  for (int i = 0; i < mesh_.cell_count(); ++i) {
    Primitive w = to_primitive(field[static_cast<std::size_t>(i)], case_.gas);
    double c = std::sqrt(case_.gas.gamma * w.p / w.rho);
    const CellGeometry& g = mesh_.geometry(i);
    double sum = 0.0;
    for (int k = 0; k < 3; ++k) {
      Vec2 n = g.edge_normal[static_cast<std::size_t>(k)];
      sum += (std::abs(w.u * n.x + w.v * n.y) + c) *
             g.edge_length[static_cast<std::size_t>(k)];
    }
    worst = std::max(worst, sum / (2.0 * g.area));
  }
  return cfl / worst;
}

std::vector<State> Discretization::initial_field() const {
  if (case_.exact) return exact_cell_averages(mesh_, case_);
  return std::vector<State>(static_cast<std::size_t>(mesh_.cell_count()),
                            case_.initial_uniform);
}

double residue_res_a(std::span<const State> prev, std::span<const State> next,
                     double dt) {
  double acc = 0.0;
  for (std::size_t i = 0; i < prev.size(); ++i)
    for (int c = 0; c < 4; ++c)
      acc += std::abs(next[i][c] - prev[i][c]);
  return acc / dt / (4.0 * static_cast<double>(prev.size()));
}

IterationReport run_to_convergence(Discretization& disc,
                                   const SweepOrderings& orderings,
                                   const SolverConfig& cfg) {
  if (!(cfg.cfl > 0.0)) throw ConfigError("CFL must be positive");
  const double delta = cfg.delta.value_or(disc.problem().default_delta);
  if (!(delta > 0.0)) throw ConfigError("delta must be positive");

  IterationReport rep;
  std::vector<State> u = disc.initial_field();
  std::vector<State> prev, s1, s2;

  auto begin = std::chrono::steady_clock::now();
  try {
    bool done = false;
    int direction = 0;  // cycles the eight sweep orderings
    while (!done && rep.iterations < cfg.max_iterations) {
      double dt = disc.compute_dt(u, cfg.cfl);
      prev = u;
      switch (cfg.driver) {
        case Driver::FeJacobi:
          fe_jacobi_step(disc, u, dt, s1);
          break;
        case Driver::Rk3Jacobi:
          rk3_jacobi_step(disc, u, dt, s1, s2);
          break;
        case Driver::FeFastSweep: {
          if (cfg.global_alpha) disc.refresh_global_alpha(u);
          const auto& order =
              orderings.orders[static_cast<std::size_t>(direction)];
          direction = (direction + 1) % 8;
          gauss_seidel_sweep(disc, u, order, dt);
          break;
        }
      }
      double res = residue_res_a(prev, u, dt);
      ++rep.iterations;
      rep.history.push_back({res, dt});
      if (res <= delta) {
        rep.converged = true;
        done = true;
      } else if (!(res < 1e6)) {
        rep.diverged = true;
        rep.failure = "residue blew up (ResA = " + std::to_string(res) + ")";
        done = true;
      }
    }
  } catch (const NonPhysicalStateError& e) {
    rep.diverged = true;
    rep.failure = e.what();
  }
  auto end = std::chrono::steady_clock::now();
  rep.seconds = std::chrono::duration<double>(end - begin).count();
  rep.field.u = std::move(u);
  rep.field.generation = static_cast<std::uint64_t>(rep.iterations);
  return rep;
}

ErrorNorms density_error_norms(const Mesh& mesh, std::span<const State> u,
                               std::span<const State> exact_avg) {
  ErrorNorms n;
  double total_area = 0.0;
  double weighted = 0.0;
  for (int i = 0; i < mesh.cell_count(); ++i) {
    double err = std::abs(u[static_cast<std::size_t>(i)][0] -
                          exact_avg[static_cast<std::size_t>(i)][0]);
    double area = mesh.geometry(i).area;
    weighted += area * err;
    total_area += area;
    n.linf = std::max(n.linf, err);
  }
  n.l1 = weighted / total_area;
  return n;
}

}  // namespace sweepfv
