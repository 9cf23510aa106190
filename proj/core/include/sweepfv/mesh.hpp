#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sweepfv/geometry.hpp"
#include "sweepfv/quadrature.hpp"

namespace sweepfv {

enum class BoundaryTag : int {
  DirichletLeft = 0,
  DirichletTop = 1,
  Wall = 2,
  Outflow = 3,
  Exact = 4,
};

std::string_view to_string(BoundaryTag tag);
BoundaryTag parse_boundary_tag(std::string_view text);

/// Per-edge neighbor entry: cell index if >= 0, otherwise a boundary tag.
struct EdgeRef {
  int value = -1;

  static EdgeRef cell(int i) { return {i}; }
  static EdgeRef boundary(BoundaryTag t) { return {-1 - static_cast<int>(t)}; }
  bool is_boundary() const { return value < 0; }
  int cell_index() const { return value; }
  BoundaryTag tag() const { return static_cast<BoundaryTag>(-1 - value); }
};

struct CellGeometry {
  double area = 0.0;
  Vec2 centroid;
  std::array<double, 3> edge_length{};
  std::array<Vec2, 3> edge_normal{};  // outward unit normals
};

/// Immutable triangulation with edge adjacency and cached geometry.
/// Edge k of a cell joins its nodes k and (k+1)%3; cells are CCW.
struct Mesh {
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> cells;
  std::vector<std::array<EdgeRef, 3>> edge_neighbors;
  std::vector<CellGeometry> geom;
  Vec2 bbox_min, bbox_max;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int cell_count() const { return static_cast<int>(cells.size()); }
  const CellGeometry& geometry(int i) const {
    return geom[static_cast<std::size_t>(i)];
  }
  std::array<Vec2, 3> cell_vertices(int i) const {
    const auto& c = cells[static_cast<std::size_t>(i)];
    return {nodes[static_cast<std::size_t>(c[0])],
            nodes[static_cast<std::size_t>(c[1])],
            nodes[static_cast<std::size_t>(c[2])]};
  }
};

/// Parse the plain-text mesh format; validates topology and orientation.
/// Throws MeshError on any defect.
Mesh parse_mesh(std::string_view text);
Mesh read_mesh(const std::filesystem::path& path);

/// Serialize a mesh; parse_mesh(format_mesh(m)) reproduces nodes and
/// connectivity exactly.
std::string format_mesh(const Mesh& mesh);
void write_mesh(const std::filesystem::path& path, const Mesh& mesh);

/// Split every triangle into four similar children through edge midpoints.
/// Shared midpoints are deduplicated by parent node-index pair; boundary
/// tags are inherited by the two child edges.
Mesh refine_uniform(const Mesh& mesh);

/// Integral mean of f over cell i (degree-6 quadrature). f maps Vec2 to
/// double or Vec4.
template <class F>
auto cell_average(const Mesh& mesh, int i, F&& f) {
  auto v = mesh.cell_vertices(i);
  return TriangleQuadrature::average(v[0], v[1], v[2], std::forward<F>(f));
}

/// The mesh plus mirror-image ghost triangles outside EXACT boundary sides.
/// Cells 0..real_count-1 are the input mesh's, in order; the rest are ghosts
/// whose averages are supplied externally. Adjacency spans the whole set.
struct ExtendedMesh {
  int real_count = 0;
  std::vector<std::array<Vec2, 3>> cell_nodes;
  std::vector<std::array<EdgeRef, 3>> edge_neighbors;
  std::vector<CellGeometry> geom;

  int cell_count() const { return static_cast<int>(cell_nodes.size()); }
  int ghost_count() const { return cell_count() - real_count; }
  bool is_ghost(int i) const { return i >= real_count; }
  const CellGeometry& geometry(int i) const {
    return geom[static_cast<std::size_t>(i)];
  }
};

/// Reflect the mesh across every straight run of EXACT boundary edges (and
/// across adjacent-run corners), keeping ghosts within a few adjacency
/// layers of the real cells. Meshes without EXACT edges pass through
/// unchanged. Requires EXACT sides to be straight.
ExtendedMesh extend_for_exact_boundaries(const Mesh& mesh);

template <class F>
auto ghost_cell_average(const ExtendedMesh& ext, int i, F&& f) {
  const auto& v = ext.cell_nodes[static_cast<std::size_t>(i)];
  return TriangleQuadrature::average(v[0], v[1], v[2], std::forward<F>(f));
}

}  // namespace sweepfv
