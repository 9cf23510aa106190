#include "sweepfv/mesh.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

#include "sweepfv/errors.hpp"

namespace sweepfv {

namespace {

std::string fmt_full(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::uint64_t key_pair(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

double signed_area(Vec2 a, Vec2 b, Vec2 c) {
  return 0.5 * cross(b - a, c - a);
}

CellGeometry make_geometry(Vec2 a, Vec2 b, Vec2 c) {
  CellGeometry g;
  g.area = signed_area(a, b, c);
  g.centroid = (1.0 / 3.0) * (a + b + c);
  const std::array<Vec2, 3> v = {a, b, c};
  for (int k = 0; k < 3; ++k) {
    Vec2 d = v[static_cast<std::size_t>((k + 1) % 3)] -
             v[static_cast<std::size_t>(k)];
    double len = norm(d);
    g.edge_length[static_cast<std::size_t>(k)] = len;
    // right-hand perpendicular of a CCW polygon edge points outward
    g.edge_normal[static_cast<std::size_t>(k)] = {d.y / len, -d.x / len};
  }
  return g;
}

struct BoundaryTagMap {
  std::map<std::pair<int, int>, BoundaryTag> tags;

  void add(int a, int b, BoundaryTag t) {
    auto key = std::minmax(a, b);
    if (!tags.emplace(key, t).second)
      throw MeshError("duplicate boundary edge (" + std::to_string(a) + "," +
                      std::to_string(b) + ")");
  }
};

/// Shared validation/assembly path for parse_mesh and refine_uniform.
Mesh build_mesh(std::vector<Vec2> nodes, std::vector<std::array<int, 3>> cells,
                const BoundaryTagMap& boundary) {
  Mesh m;
  m.nodes = std::move(nodes);
  m.cells = std::move(cells);
  const int nv = m.node_count();
  const int mc = m.cell_count();
  if (nv < 3 || mc < 1) throw MeshError("mesh needs at least 3 nodes, 1 cell");

  m.bbox_min = m.bbox_max = m.nodes[0];
  for (const Vec2& p : m.nodes) {
    m.bbox_min.x = std::min(m.bbox_min.x, p.x);
    m.bbox_min.y = std::min(m.bbox_min.y, p.y);
    m.bbox_max.x = std::max(m.bbox_max.x, p.x);
    m.bbox_max.y = std::max(m.bbox_max.y, p.y);
  }
  const double diag2 = dot(m.bbox_max - m.bbox_min, m.bbox_max - m.bbox_min);

  for (int i = 0; i < mc; ++i) {
    auto& c = m.cells[static_cast<std::size_t>(i)];
    for (int n : c) {
      if (n < 0 || n >= nv)
        throw MeshError("cell " + std::to_string(i) + ": node index " +
                        std::to_string(n) + " out of range");
    }
    if (c[0] == c[1] || c[1] == c[2] || c[0] == c[2])
      throw MeshError("cell " + std::to_string(i) + ": repeated node index");
    double sa = signed_area(m.nodes[static_cast<std::size_t>(c[0])],
                            m.nodes[static_cast<std::size_t>(c[1])],
                            m.nodes[static_cast<std::size_t>(c[2])]);
    if (std::abs(sa) <= 1e-14 * diag2)
      throw MeshError("cell " + std::to_string(i) + ": degenerate (area " +
                      fmt_full(sa) + ")");
    if (sa < 0.0) std::swap(c[1], c[2]);  // enforce CCW
  }

  // edge adjacency by node-pair hashing
  struct Incidence {
    int count = 0;
    std::array<std::pair<int, int>, 2> at;  // (cell, slot)
  };
  std::unordered_map<std::uint64_t, Incidence> edges;
  edges.reserve(static_cast<std::size_t>(mc) * 2);
  for (int i = 0; i < mc; ++i) {
    const auto& c = m.cells[static_cast<std::size_t>(i)];
    for (int k = 0; k < 3; ++k) {
      auto& inc = edges[key_pair(c[static_cast<std::size_t>(k)],
                                 c[static_cast<std::size_t>((k + 1) % 3)])];
      if (inc.count >= 2)
        throw MeshError("non-manifold edge at cell " + std::to_string(i));
      inc.at[static_cast<std::size_t>(inc.count++)] = {i, k};
    }
  }

  m.edge_neighbors.assign(static_cast<std::size_t>(mc), {});
  std::size_t used_tags = 0;
  for (const auto& [key, inc] : edges) {
    if (inc.count == 2) {
      auto [c0, k0] = inc.at[0];
      auto [c1, k1] = inc.at[1];
      m.edge_neighbors[static_cast<std::size_t>(c0)]
                      [static_cast<std::size_t>(k0)] = EdgeRef::cell(c1);
      m.edge_neighbors[static_cast<std::size_t>(c1)]
                      [static_cast<std::size_t>(k1)] = EdgeRef::cell(c0);
    } else {
      int a = static_cast<int>(key >> 32);
      int b = static_cast<int>(key & 0xffffffffu);
      auto it = boundary.tags.find({a, b});
      if (it == boundary.tags.end())
        throw MeshError("boundary edge (" + std::to_string(a) + "," +
                        std::to_string(b) + ") missing from boundary list");
      auto [c0, k0] = inc.at[0];
      m.edge_neighbors[static_cast<std::size_t>(c0)]
                      [static_cast<std::size_t>(k0)] =
          EdgeRef::boundary(it->second);
      ++used_tags;
    }
  }
  if (used_tags != boundary.tags.size())
    throw MeshError("boundary list names an edge that is not on the boundary");

  m.geom.reserve(static_cast<std::size_t>(mc));
  for (int i = 0; i < mc; ++i) {
    auto v = m.cell_vertices(i);
    m.geom.push_back(make_geometry(v[0], v[1], v[2]));
  }
  return m;
}

}  // namespace

std::string_view to_string(BoundaryTag tag) {
  switch (tag) {
    case BoundaryTag::DirichletLeft: return "DIRICHLET_LEFT";
    case BoundaryTag::DirichletTop: return "DIRICHLET_TOP";
    case BoundaryTag::Wall: return "WALL";
    case BoundaryTag::Outflow: return "OUTFLOW";
    case BoundaryTag::Exact: return "EXACT";
  }
  return "?";
}

BoundaryTag parse_boundary_tag(std::string_view text) {
  if (text == "DIRICHLET_LEFT") return BoundaryTag::DirichletLeft;
  if (text == "DIRICHLET_TOP") return BoundaryTag::DirichletTop;
  if (text == "WALL") return BoundaryTag::Wall;
  if (text == "OUTFLOW") return BoundaryTag::Outflow;
  if (text == "EXACT") return BoundaryTag::Exact;
  throw MeshError("unknown boundary tag '" + std::string(text) + "'");
}

Mesh parse_mesh(std::string_view text) {
  // tokenized lines with comments stripped, keeping line numbers for errors
  std::vector<std::pair<int, std::string>> lines;
  {
    std::istringstream in{std::string(text)};
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
      ++no;
      if (auto pos = line.find('#'); pos != std::string::npos)
        line.erase(pos);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      lines.emplace_back(no, line);
    }
  }
  std::size_t cursor = 0;
  auto next_line = [&]() -> std::pair<int, std::istringstream> {
    if (cursor >= lines.size()) throw MeshError("unexpected end of mesh file");
    auto& [no, content] = lines[cursor++];
    return {no, std::istringstream(content)};
  };
  auto malformed = [](int no) {
    return MeshError("malformed line " + std::to_string(no));
  };

  long nv = 0, mc = 0, nb = 0;
  {
    auto [no, in] = next_line();
    std::string rest;
    if (!(in >> nv >> mc >> nb) || (in >> rest) || nv < 0 || mc < 0 || nb < 0)
      throw malformed(no);
  }
  std::vector<Vec2> nodes(static_cast<std::size_t>(nv));
  for (auto& p : nodes) {
    auto [no, in] = next_line();
    std::string rest;
    if (!(in >> p.x >> p.y) || (in >> rest)) throw malformed(no);
  }
  std::vector<std::array<int, 3>> cells(static_cast<std::size_t>(mc));
  for (auto& c : cells) {
    auto [no, in] = next_line();
    std::string rest;
    if (!(in >> c[0] >> c[1] >> c[2]) || (in >> rest)) throw malformed(no);
  }
  BoundaryTagMap boundary;
  for (long e = 0; e < nb; ++e) {
    auto [no, in] = next_line();
    int a = 0, b = 0;
    std::string tag, rest;
    if (!(in >> a >> b >> tag) || (in >> rest)) throw malformed(no);
    if (a < 0 || a >= nv || b < 0 || b >= nv)
      throw MeshError("boundary edge node index out of range at line " +
                      std::to_string(no));
    boundary.add(a, b, parse_boundary_tag(tag));
  }
  if (cursor != lines.size())
    throw MeshError("trailing content at line " +
                    std::to_string(lines[cursor].first));
  return build_mesh(std::move(nodes), std::move(cells), boundary);
}

Mesh read_mesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open mesh file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_mesh(ss.str());
}

std::string format_mesh(const Mesh& mesh) {
  std::map<std::pair<int, int>, BoundaryTag> blist;
  for (int i = 0; i < mesh.cell_count(); ++i) {
    const auto& c = mesh.cells[static_cast<std::size_t>(i)];
    for (int k = 0; k < 3; ++k) {
      EdgeRef e = mesh.edge_neighbors[static_cast<std::size_t>(i)]
                                     [static_cast<std::size_t>(k)];
      if (e.is_boundary())
        blist.emplace(std::minmax(c[static_cast<std::size_t>(k)],
                                  c[static_cast<std::size_t>((k + 1) % 3)]),
                      e.tag());
    }
  }
  std::ostringstream out;
  out << mesh.node_count() << ' ' << mesh.cell_count() << ' ' << blist.size()
      << '\n';
  for (const Vec2& p : mesh.nodes)
    out << fmt_full(p.x) << ' ' << fmt_full(p.y) << '\n';
  for (const auto& c : mesh.cells)
    out << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
  for (const auto& [key, tag] : blist)
    out << key.first << ' ' << key.second << ' ' << to_string(tag) << '\n';
  return out.str();
}

void write_mesh(const std::filesystem::path& path, const Mesh& mesh) {
  std::ofstream out(path);
  if (!out) throw MeshError("cannot write mesh file " + path.string());
  out << format_mesh(mesh);
}

Mesh refine_uniform(const Mesh& mesh) {
  std::vector<Vec2> nodes = mesh.nodes;
  std::map<std::pair<int, int>, int> midpoint;  // parent node pair -> new node
  auto mid = [&](int a, int b) {
    auto key = std::minmax(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    int id = static_cast<int>(nodes.size());
    nodes.push_back(0.5 * (mesh.nodes[static_cast<std::size_t>(a)] +
                           mesh.nodes[static_cast<std::size_t>(b)]));
    midpoint.emplace(key, id);
    return id;
  };

  std::vector<std::array<int, 3>> cells;
  cells.reserve(mesh.cells.size() * 4);
  BoundaryTagMap boundary;
  for (int i = 0; i < mesh.cell_count(); ++i) {
    const auto& c = mesh.cells[static_cast<std::size_t>(i)];
    int m01 = mid(c[0], c[1]);
    int m12 = mid(c[1], c[2]);
    int m20 = mid(c[2], c[0]);
    cells.push_back({c[0], m01, m20});
    cells.push_back({m01, c[1], m12});
    cells.push_back({m20, m12, c[2]});
    cells.push_back({m01, m12, m20});
    for (int k = 0; k < 3; ++k) {
      EdgeRef e = mesh.edge_neighbors[static_cast<std::size_t>(i)]
                                     [static_cast<std::size_t>(k)];
      if (!e.is_boundary()) continue;
      int a = c[static_cast<std::size_t>(k)];
      int b = c[static_cast<std::size_t>((k + 1) % 3)];
      int ab = mid(a, b);
      boundary.add(a, ab, e.tag());
      boundary.add(ab, b, e.tag());
    }
  }
  return build_mesh(std::move(nodes), std::move(cells), boundary);
}

namespace {

struct Reflection {
  Vec2 origin;
  Vec2 dir;  // unit direction of the mirror line

  Vec2 apply(Vec2 p) const {
    Vec2 u = p - origin;
    double along = dot(u, dir);
    double off = cross(dir, u);  // signed distance from the line
    Vec2 image = origin + along * dir - off * Vec2{-dir.y, dir.x};
    // points on the line map to themselves bit-exactly
    if (off == 0.0) return p;
    return image;
  }
};

std::uint64_t coord_bits(double x) {
  if (x == 0.0) x = 0.0;  // collapse -0.0
  return std::bit_cast<std::uint64_t>(x);
}

}  // namespace

ExtendedMesh extend_for_exact_boundaries(const Mesh& mesh) {
  const int mc = mesh.cell_count();

  // collect EXACT boundary edges
  struct BEdge {
    int a, b;  // node ids, a < b
    Vec2 pa, pb;
  };
  std::vector<BEdge> exact_edges;
  for (int i = 0; i < mc; ++i) {
    const auto& c = mesh.cells[static_cast<std::size_t>(i)];
    for (int k = 0; k < 3; ++k) {
      EdgeRef e = mesh.edge_neighbors[static_cast<std::size_t>(i)]
                                     [static_cast<std::size_t>(k)];
      if (e.is_boundary() && e.tag() == BoundaryTag::Exact) {
        auto [a, b] = std::minmax(c[static_cast<std::size_t>(k)],
                                  c[static_cast<std::size_t>((k + 1) % 3)]);
        exact_edges.push_back({a, b, mesh.nodes[static_cast<std::size_t>(a)],
                               mesh.nodes[static_cast<std::size_t>(b)]});
      }
    }
  }

  ExtendedMesh ext;
  ext.real_count = mc;
  ext.cell_nodes.reserve(static_cast<std::size_t>(mc));
  for (int i = 0; i < mc; ++i) ext.cell_nodes.push_back(mesh.cell_vertices(i));

  std::vector<Reflection> line_of_run;
  std::vector<int> run_of_edge(exact_edges.size(), -1);
  if (!exact_edges.empty()) {
    // group EXACT edges into maximal straight runs (union by shared node +
    // collinearity); EXACT sides must be straight for mirror ghosts
    std::map<int, std::vector<int>> edges_at_node;
    for (std::size_t e = 0; e < exact_edges.size(); ++e) {
      edges_at_node[exact_edges[e].a].push_back(static_cast<int>(e));
      edges_at_node[exact_edges[e].b].push_back(static_cast<int>(e));
    }
    auto unit_dir = [&](int e) {
      Vec2 d = exact_edges[static_cast<std::size_t>(e)].pb -
               exact_edges[static_cast<std::size_t>(e)].pa;
      return (1.0 / norm(d)) * d;
    };
    int nruns = 0;
    for (std::size_t seed = 0; seed < exact_edges.size(); ++seed) {
      if (run_of_edge[seed] >= 0) continue;
      int run = nruns++;
      std::vector<int> stack = {static_cast<int>(seed)};
      run_of_edge[seed] = run;
      while (!stack.empty()) {
        int e = stack.back();
        stack.pop_back();
        for (int node : {exact_edges[static_cast<std::size_t>(e)].a,
                         exact_edges[static_cast<std::size_t>(e)].b}) {
          for (int f : edges_at_node[node]) {
            if (run_of_edge[static_cast<std::size_t>(f)] >= 0) continue;
            if (std::abs(cross(unit_dir(e), unit_dir(f))) < 1e-10) {
              run_of_edge[static_cast<std::size_t>(f)] = run;
              stack.push_back(f);
            }
          }
        }
      }
      const BEdge& be = exact_edges[seed];
      line_of_run.push_back({be.pa, unit_dir(static_cast<int>(seed))});
    }
  }
  if (line_of_run.empty()) {
    // no EXACT boundary: extended mesh is the mesh itself
    ext.edge_neighbors = mesh.edge_neighbors;
    ext.geom = mesh.geom;
    return ext;
  }

  // reflections: one per run, plus the composition for runs meeting at a node
  std::vector<std::vector<Reflection>> transforms;
  for (const auto& r : line_of_run) transforms.push_back({r});
  for (std::size_t r1 = 0; r1 < line_of_run.size(); ++r1) {
    for (std::size_t r2 = r1 + 1; r2 < line_of_run.size(); ++r2) {
      bool adjacent = false;
      for (std::size_t e = 0; e < exact_edges.size(); ++e) {
        if (run_of_edge[e] != static_cast<int>(r1)) continue;
        for (std::size_t f = 0; f < exact_edges.size(); ++f) {
          if (run_of_edge[f] != static_cast<int>(r2)) continue;
          if (exact_edges[e].a == exact_edges[f].a ||
              exact_edges[e].a == exact_edges[f].b ||
              exact_edges[e].b == exact_edges[f].a ||
              exact_edges[e].b == exact_edges[f].b)
            adjacent = true;
        }
      }
      if (adjacent)
        transforms.push_back({line_of_run[r1], line_of_run[r2]});
    }
  }

  // node pool keyed by exact coordinates; real nodes registered first so
  // on-line reflected nodes glue to them
  std::vector<Vec2> pool = mesh.nodes;
  std::unordered_map<std::uint64_t, std::vector<int>> pool_index;
  auto intern = [&](Vec2 p) {
    std::uint64_t h = coord_bits(p.x) * 0x9e3779b97f4a7c15ull ^ coord_bits(p.y);
    auto& bucket = pool_index[h];
    for (int id : bucket)
      if (pool[static_cast<std::size_t>(id)] == p) return id;
    int id = static_cast<int>(pool.size());
    pool.push_back(p);
    bucket.push_back(id);
    return id;
  };
  for (int n = 0; n < mesh.node_count(); ++n) {
    Vec2 p = mesh.nodes[static_cast<std::size_t>(n)];
    std::uint64_t h = coord_bits(p.x) * 0x9e3779b97f4a7c15ull ^ coord_bits(p.y);
    pool_index[h].push_back(n);
  }

  // cell soup: real cells then reflected copies (deduplicated)
  std::vector<std::array<int, 3>> soup = mesh.cells;
  std::map<std::array<int, 3>, int> cell_key;
  auto sorted3 = [](std::array<int, 3> c) {
    std::sort(c.begin(), c.end());
    return c;
  };
  for (int i = 0; i < mc; ++i)
    cell_key.emplace(sorted3(mesh.cells[static_cast<std::size_t>(i)]), i);
  for (const auto& chain : transforms) {
    for (int i = 0; i < mc; ++i) {
      std::array<Vec2, 3> v = mesh.cell_vertices(i);
      for (const Reflection& r : chain)
        for (Vec2& p : v) p = r.apply(p);
      if (chain.size() % 2 == 1) std::swap(v[1], v[2]);  // restore CCW
      double sa = signed_area(v[0], v[1], v[2]);
      if (sa <= 0.0) continue;  // snapped-degenerate image, drop
      std::array<int, 3> ids = {intern(v[0]), intern(v[1]), intern(v[2])};
      if (ids[0] == ids[1] || ids[1] == ids[2] || ids[0] == ids[2]) continue;
      if (cell_key.emplace(sorted3(ids), static_cast<int>(soup.size())).second)
        soup.push_back(ids);
    }
  }

  // adjacency over the whole soup
  struct Pair {
    int first = -1;
    int second = -1;
  };
  std::unordered_map<std::uint64_t, Pair> inc;
  inc.reserve(soup.size() * 2);
  for (std::size_t i = 0; i < soup.size(); ++i) {
    for (int k = 0; k < 3; ++k) {
      auto& slot = inc[key_pair(soup[i][static_cast<std::size_t>(k)],
                                soup[i][static_cast<std::size_t>((k + 1) % 3)])];
      (slot.first < 0 ? slot.first : slot.second) = static_cast<int>(i);
    }
  }
  auto neighbor_of = [&](int i, int k) {
    auto slot = inc[key_pair(soup[static_cast<std::size_t>(i)]
                                 [static_cast<std::size_t>(k)],
                             soup[static_cast<std::size_t>(i)]
                                 [static_cast<std::size_t>((k + 1) % 3)])];
    if (slot.second < 0) return -1;
    return slot.first == i ? slot.second : slot.first;
  };

  // keep ghosts within 4 adjacency layers of the real cells
  std::vector<int> depth(soup.size(), -1);
  std::vector<int> frontier;
  for (int i = 0; i < mc; ++i) {
    depth[static_cast<std::size_t>(i)] = 0;
    frontier.push_back(i);
  }
  for (int layer = 1; layer <= 4; ++layer) {
    std::vector<int> next;
    for (int i : frontier) {
      for (int k = 0; k < 3; ++k) {
        int j = neighbor_of(i, k);
        if (j >= 0 && depth[static_cast<std::size_t>(j)] < 0) {
          depth[static_cast<std::size_t>(j)] = layer;
          next.push_back(j);
        }
      }
    }
    frontier = std::move(next);
  }

  std::vector<int> keep(soup.size(), -1);
  for (int i = 0; i < mc; ++i) keep[static_cast<std::size_t>(i)] = i;
  int next_id = mc;
  for (std::size_t i = static_cast<std::size_t>(mc); i < soup.size(); ++i)
    if (depth[i] >= 0) keep[i] = next_id++;

  ext.cell_nodes.resize(static_cast<std::size_t>(next_id));
  ext.edge_neighbors.assign(static_cast<std::size_t>(next_id),
                            {EdgeRef::boundary(BoundaryTag::Exact),
                             EdgeRef::boundary(BoundaryTag::Exact),
                             EdgeRef::boundary(BoundaryTag::Exact)});
  ext.geom.resize(static_cast<std::size_t>(next_id));
  for (std::size_t i = 0; i < soup.size(); ++i) {
    int id = keep[i];
    if (id < 0) continue;
    std::array<Vec2, 3> v = {pool[static_cast<std::size_t>(soup[i][0])],
                             pool[static_cast<std::size_t>(soup[i][1])],
                             pool[static_cast<std::size_t>(soup[i][2])]};
    ext.cell_nodes[static_cast<std::size_t>(id)] = v;
    ext.geom[static_cast<std::size_t>(id)] = make_geometry(v[0], v[1], v[2]);
    for (int k = 0; k < 3; ++k) {
      int j = neighbor_of(static_cast<int>(i), k);
      if (j >= 0 && keep[static_cast<std::size_t>(j)] >= 0) {
        ext.edge_neighbors[static_cast<std::size_t>(id)]
                          [static_cast<std::size_t>(k)] =
            EdgeRef::cell(keep[static_cast<std::size_t>(j)]);
      } else if (id < mc) {
        // preserve the real mesh's boundary tags on untouched edges
        EdgeRef e = mesh.edge_neighbors[i][static_cast<std::size_t>(k)];
        if (e.is_boundary())
          ext.edge_neighbors[i][static_cast<std::size_t>(k)] = e;
      }
    }
  }
  return ext;
}

}  // namespace sweepfv
