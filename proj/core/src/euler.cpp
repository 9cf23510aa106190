#include "sweepfv/euler.hpp"

#include <cmath>

#include "sweepfv/errors.hpp"

namespace sweepfv {

namespace {

double pressure(const State& s, GasParams gas) {
  double ke = 0.5 * (s[1] * s[1] + s[2] * s[2]) / s[0];
  return (gas.gamma - 1.0) * (s[3] - ke);
}

void require_physical(const State& s, GasParams gas, const char* where) {
  if (!(s[0] > 0.0) || !(pressure(s, gas) > 0.0))
    throw NonPhysicalStateError(std::string(where) +
                                ": non-physical state (rho=" +
                                std::to_string(s[0]) +
                                ", p=" + std::to_string(pressure(s, gas)) +
                                ")");
}

}  // namespace

Primitive to_primitive(const State& s, GasParams gas) {
  require_physical(s, gas, "to_primitive");
  return {s[0], s[1] / s[0], s[2] / s[0], pressure(s, gas)};
}

State to_conservative(const Primitive& w, GasParams gas) {
  State s;
  s[0] = w.rho;
  s[1] = w.rho * w.u;
  s[2] = w.rho * w.v;
  s[3] = w.p / (gas.gamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v);
  return s;
}

bool is_physical(const State& s, GasParams gas) {
  return s[0] > 0.0 && pressure(s, gas) > 0.0;
}

double sound_speed(const State& s, GasParams gas) {
  require_physical(s, gas, "sound_speed");
  return std::sqrt(gas.gamma * pressure(s, gas) / s[0]);
}

std::pair<Vec4, Vec4> flux(const State& s, GasParams gas) {
  require_physical(s, gas, "flux");
  double p = pressure(s, gas);
  double u = s[1] / s[0];
  double v = s[2] / s[0];
  Vec4 f, g;
  f[0] = s[1];
  f[1] = s[1] * u + p;
  f[2] = s[2] * u;
  f[3] = u * (s[3] + p);
  g[0] = s[2];
  g[1] = s[1] * v;
  g[2] = s[2] * v + p;
  g[3] = v * (s[3] + p);
  return {f, g};
}

Vec4 normal_flux(const State& s, Vec2 n, GasParams gas) {
  auto [f, g] = flux(s, gas);
  Vec4 r;
  for (int i = 0; i < 4; ++i) r[i] = f[i] * n.x + g[i] * n.y;
  return r;
}

double max_wave_speed(const State& s, Vec2 n, GasParams gas) {
  double un = (s[1] * n.x + s[2] * n.y) / s[0];
  return std::abs(un) + sound_speed(s, gas);
}

Vec4 lax_friedrichs(const State& in, const State& out, Vec2 n, GasParams gas,
                    double alpha) {
  Vec4 fn_in = normal_flux(in, n, gas);
  Vec4 fn_out = normal_flux(out, n, gas);
  Vec4 r;
  for (int i = 0; i < 4; ++i)
    r[i] = 0.5 * ((fn_out[i] + fn_in[i]) - alpha * (out[i] - in[i]));
  return r;
}

Vec4 lax_friedrichs(const State& in, const State& out, Vec2 n, GasParams gas) {
  double alpha =
      std::max(max_wave_speed(in, n, gas), max_wave_speed(out, n, gas));
  return lax_friedrichs(in, out, n, gas, alpha);
}

State boundary_state(const BoundaryRule& rule, const State& interior, Vec2 n,
                     Vec2 point, GasParams gas) {
  switch (rule.kind) {
    case BoundaryRule::Kind::Dirichlet:
      return rule.dirichlet;
    case BoundaryRule::Kind::Outflow:
      return interior;
    case BoundaryRule::Kind::Wall: {
      State s = interior;
      double mn = s[1] * n.x + s[2] * n.y;
      s[1] -= 2.0 * mn * n.x;
      s[2] -= 2.0 * mn * n.y;
      return s;
    }
    case BoundaryRule::Kind::Exact:
      return rule.exact(point);
  }
  throw ConfigError("boundary_state: invalid rule kind");
  (void)gas;
}

const BoundaryRule& Case::rule_for(BoundaryTag tag) const {
  auto it = boundary.find(tag);
  if (it == boundary.end())
    throw ConfigError("case '" + id + "': no boundary rule for tag " +
                      std::string(to_string(tag)));
  return it->second;
}

namespace {

Case manufactured_case(std::string id, bool with_source) {
  Case c;
  c.id = std::move(id);
  GasParams gas = c.gas;
  if (with_source) {
    c.exact = [gas](Vec2 q) {
      double s = 1.0 + 0.2 * std::sin(q.x + q.y);
      return to_conservative({s, 1.0, 1.0, s}, gas);
    };
    c.source = [](Vec2 q) {
      double cs = std::cos(q.x + q.y);
      Vec4 r;
      r[0] = 0.4 * cs;
      r[1] = 0.6 * cs;
      r[2] = 0.6 * cs;
      r[3] = 1.8 * cs;
      return r;
    };
  } else {
    c.exact = [gas](Vec2 q) {
      double s = 1.0 + 0.2 * std::sin(q.x - q.y);
      return to_conservative({s, 1.0, 1.0, 1.0}, gas);
    };
  }
  BoundaryRule exact_rule;
  exact_rule.kind = BoundaryRule::Kind::Exact;
  exact_rule.exact = c.exact;
  c.boundary[BoundaryTag::Exact] = exact_rule;
  c.default_delta = 1e-12;
  c.initial_uniform = c.exact({0.0, 0.0});
  return c;
}

Case shock_reflection_case() {
  Case c;
  c.id = "shock_reflection";
  State left = to_conservative({1.0, 2.9, 0.0, 5.0 / 7.0}, c.gas);
  State top = to_conservative({1.69997, 2.61934, -0.50632, 1.52819}, c.gas);
  c.boundary[BoundaryTag::DirichletLeft] = {BoundaryRule::Kind::Dirichlet,
                                            left, nullptr};
  c.boundary[BoundaryTag::DirichletTop] = {BoundaryRule::Kind::Dirichlet, top,
                                           nullptr};
  c.boundary[BoundaryTag::Wall] = {BoundaryRule::Kind::Wall, {}, nullptr};
  c.boundary[BoundaryTag::Outflow] = {BoundaryRule::Kind::Outflow, {}, nullptr};
  c.initial_uniform = left;
  c.default_delta = 1e-11;
  return c;
}

}  // namespace

Case make_case(std::string_view id) {
  if (id == "euler_source") return manufactured_case(std::string(id), true);
  if (id == "euler_nosource") return manufactured_case(std::string(id), false);
  if (id == "shock_reflection") return shock_reflection_case();
  throw ConfigError("unknown case id '" + std::string(id) + "'");
}

std::vector<std::string> case_ids() {
  return {"euler_source", "euler_nosource", "shock_reflection"};
}

Vec4 source_average(const Mesh& mesh, int i, const Case& c) {
  if (!c.source) return {};
  return cell_average(mesh, i, c.source);
}

State exact_solution(const Case& c, Vec2 point) {
  if (!c.exact)
    throw ConfigError("case '" + c.id + "' has no exact solution");
  return c.exact(point);
}

std::vector<State> ghost_averages(const ExtendedMesh& ext, const Case& c) {
  if (ext.ghost_count() > 0 && !c.exact)
    throw ConfigError("case '" + c.id +
                      "': EXACT boundaries need an exact solution");
  std::vector<State> out;
  out.reserve(static_cast<std::size_t>(ext.ghost_count()));
  for (int i = ext.real_count; i < ext.cell_count(); ++i)
    out.push_back(ghost_cell_average(ext, i, c.exact));
  return out;
}

std::vector<State> exact_cell_averages(const Mesh& mesh, const Case& c) {
  if (!c.exact)
    throw ConfigError("case '" + c.id + "' has no exact solution");
  std::vector<State> out;
  out.reserve(static_cast<std::size_t>(mesh.cell_count()));
  for (int i = 0; i < mesh.cell_count(); ++i)
    out.push_back(cell_average(mesh, i, c.exact));
  return out;
}

}  // namespace sweepfv
