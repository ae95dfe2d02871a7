#pragma once

// Uniform meshes of the unit square with global edge orientation and boundary flags.

#include <array>
#include <iosfwd>
#include <vector>

#include "quadcurl/polycore.hpp"

namespace quadcurl {

struct MeshCell {
  std::vector<int> vertices;  // counterclockwise
  std::vector<int> edges;     // local edge i joins vertices[i] and vertices[i+1]
  std::vector<int> edge_signs;  // +1 if the local edge direction matches the global one
  int congruence_class = 0;
};

struct Mesh {
  Shape shape = Shape::Rectangle;
  int n = 0;
  std::vector<Point> vertices;
  std::vector<std::array<int, 2>> edges;  // global direction: low index -> high index
  std::vector<MeshCell> cells;
  std::vector<bool> boundary_vertex;
  std::vector<bool> boundary_edge;
  int num_classes = 0;

  [[nodiscard]] Rational h() const { return fraction(1, n); }
  [[nodiscard]] CellGeometry cell_geometry(std::size_t c) const;
  [[nodiscard]] std::size_t num_vertices() const { return vertices.size(); }
  [[nodiscard]] std::size_t num_edges() const { return edges.size(); }
  [[nodiscard]] std::size_t num_cells() const { return cells.size(); }
  /// Index of a cell representing class `cls`.
  [[nodiscard]] std::size_t representative(int cls) const;
};

Mesh uniform_rect_mesh(int n);
/// Each square split by the diagonal from (i/n, j/n) to ((i+1)/n, (j+1)/n).
Mesh uniform_tri_mesh(int n);
Mesh uniform_mesh(Shape shape, int n);

/// Debug dump: `v x y`, `e i j [b]`, `c i j k [l]` lines.
void write_mesh(std::ostream& os, const Mesh& m);

}  // namespace quadcurl
