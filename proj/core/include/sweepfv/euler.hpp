#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sweepfv/geometry.hpp"
#include "sweepfv/mesh.hpp"

namespace sweepfv {

struct GasParams {
  double gamma = 1.4;
};

struct Primitive {
  double rho = 0.0;
  double u = 0.0;
  double v = 0.0;
  double p = 0.0;
};

Primitive to_primitive(const State& s, GasParams gas);
State to_conservative(const Primitive& w, GasParams gas);
bool is_physical(const State& s, GasParams gas);

/// Sound speed sqrt(gamma p / rho). Throws NonPhysicalStateError.
double sound_speed(const State& s, GasParams gas);

/// Physical flux pair (f, g) of the 2D compressible Euler equations.
std::pair<Vec4, Vec4> flux(const State& s, GasParams gas);

/// f(u) n_x + g(u) n_y for a unit direction n.
Vec4 normal_flux(const State& s, Vec2 n, GasParams gas);

/// Upper bound |velocity . n| + c for the flux Jacobian spectrum along n.
double max_wave_speed(const State& s, Vec2 n, GasParams gas);

/// Lax-Friedrichs flux from the interior state `in` (u-) and exterior state
/// `out` (u+), with the penalization alpha given explicitly.
Vec4 lax_friedrichs(const State& in, const State& out, Vec2 n, GasParams gas,
                    double alpha);
/// Same with the standard local alpha = max of the two wave-speed bounds.
Vec4 lax_friedrichs(const State& in, const State& out, Vec2 n, GasParams gas);

struct BoundaryRule {
  enum class Kind { Dirichlet, Wall, Outflow, Exact };
  Kind kind = Kind::Outflow;
  State dirichlet;                        // Kind::Dirichlet
  std::function<State(Vec2)> exact;       // Kind::Exact
};

/// Exterior state u+ at a boundary quadrature point.
State boundary_state(const BoundaryRule& rule, const State& interior, Vec2 n,
                     Vec2 point, GasParams gas);

/// A complete problem definition: physics parameters, boundary behavior per
/// mesh tag, optional manufactured solution and source, and defaults.
struct Case {
  std::string id;
  GasParams gas;
  std::function<State(Vec2)> exact;   // null when no exact solution is known
  std::function<Vec4(Vec2)> source;   // null means zero source
  std::map<BoundaryTag, BoundaryRule> boundary;
  State initial_uniform;              // starting field when exact is null
  double default_delta = 1e-12;

  const BoundaryRule& rule_for(BoundaryTag tag) const;
};

/// Registry of the built-in cases: "euler_source", "euler_nosource",
/// "shock_reflection". Throws ConfigError for unknown ids.
Case make_case(std::string_view id);
std::vector<std::string> case_ids();

/// Cell average of the case's source term over cell i (zero if none).
Vec4 source_average(const Mesh& mesh, int i, const Case& c);

/// Exact solution in conservative variables; throws ConfigError if the case
/// has none.
State exact_solution(const Case& c, Vec2 point);

/// Exact-solution cell averages for every ghost cell of the extension.
/// Returned in ghost order (index i - real_count).
std::vector<State> ghost_averages(const ExtendedMesh& ext, const Case& c);

/// Exact-solution cell averages on the real mesh (initial data / error
/// reference for manufactured cases).
std::vector<State> exact_cell_averages(const Mesh& mesh, const Case& c);

}  // namespace sweepfv
