#include "quadcurl/mesh.hpp"

#include <map>
#include <ostream>

namespace quadcurl {

CellGeometry Mesh::cell_geometry(std::size_t c) const {
  const auto& v = cells.at(c).vertices;
  if (shape == Shape::Triangle) return CellGeometry::triangle(vertices[v[0]], vertices[v[1]], vertices[v[2]]);
  return CellGeometry::rectangle(vertices[v[0]].x, vertices[v[2]].x, vertices[v[0]].y, vertices[v[2]].y);
}

std::size_t Mesh::representative(int cls) const {
  for (std::size_t c = 0; c < cells.size(); ++c)
    if (cells[c].congruence_class == cls) return c;
  throw InvalidArgument("no cell in congruence class " + std::to_string(cls));
}

namespace {

void finish(Mesh& m) {
  const Rational one = 1;
  std::map<std::array<int, 2>, int> edge_index;
  std::map<std::vector<std::pair<Rational, Rational>>, int> classes;
  for (auto& cell : m.cells) {
    const std::size_t nv = cell.vertices.size();
    for (std::size_t i = 0; i < nv; ++i) {
      const int a = cell.vertices[i], b = cell.vertices[(i + 1) % nv];
      const std::array<int, 2> key{std::min(a, b), std::max(a, b)};
      auto [it, inserted] = edge_index.try_emplace(key, static_cast<int>(m.edges.size()));
      if (inserted) m.edges.push_back(key);
      cell.edges.push_back(it->second);
      cell.edge_signs.push_back(a < b ? 1 : -1);
    }
    // Cells are congruent by translation when their vertex offsets agree.
    std::vector<std::pair<Rational, Rational>> offsets;
    const Point& p0 = m.vertices[cell.vertices[0]];
    for (int v : cell.vertices) offsets.emplace_back(m.vertices[v].x - p0.x, m.vertices[v].y - p0.y);
    auto [it, inserted] = classes.try_emplace(offsets, static_cast<int>(classes.size()));
    cell.congruence_class = it->second;
  }
  m.num_classes = static_cast<int>(classes.size());
  auto on_boundary = [&](const Point& p) { return p.x == 0 || p.x == one || p.y == 0 || p.y == one; };
  m.boundary_vertex.resize(m.vertices.size());
  for (std::size_t v = 0; v < m.vertices.size(); ++v) m.boundary_vertex[v] = on_boundary(m.vertices[v]);
  m.boundary_edge.resize(m.edges.size());
  for (std::size_t e = 0; e < m.edges.size(); ++e) {
    const Point& a = m.vertices[m.edges[e][0]];
    const Point& b = m.vertices[m.edges[e][1]];
    m.boundary_edge[e] = (a.x == b.x && (a.x == 0 || a.x == one)) || (a.y == b.y && (a.y == 0 || a.y == one));
  }
}

Mesh grid(Shape shape, int n) {
  if (n < 1) throw InvalidArgument("mesh needs n >= 1");
  Mesh m;
  m.shape = shape;
  m.n = n;
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) m.vertices.push_back({fraction(i, n), fraction(j, n)});
  return m;
}

}  // namespace

Mesh uniform_rect_mesh(int n) {
  Mesh m = grid(Shape::Rectangle, n);
  auto v = [n](int i, int j) { return j * (n + 1) + i; };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m.cells.push_back({{v(i, j), v(i + 1, j), v(i + 1, j + 1), v(i, j + 1)}, {}, {}, 0});
  finish(m);
  return m;
}

Mesh uniform_tri_mesh(int n) {
  Mesh m = grid(Shape::Triangle, n);
  auto v = [n](int i, int j) { return j * (n + 1) + i; };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      m.cells.push_back({{v(i, j), v(i + 1, j), v(i + 1, j + 1)}, {}, {}, 0});
      m.cells.push_back({{v(i, j), v(i + 1, j + 1), v(i, j + 1)}, {}, {}, 0});
    }
  finish(m);
  return m;
}

Mesh uniform_mesh(Shape shape, int n) { return shape == Shape::Triangle ? uniform_tri_mesh(n) : uniform_rect_mesh(n); }

void write_mesh(std::ostream& os, const Mesh& m) {
  for (const auto& p : m.vertices) os << "v " << p.x.get_str() << ' ' << p.y.get_str() << '\n';
  for (std::size_t e = 0; e < m.edges.size(); ++e)
    os << "e " << m.edges[e][0] << ' ' << m.edges[e][1] << (m.boundary_edge[e] ? " b" : "") << '\n';
  for (const auto& c : m.cells) {
    os << 'c';
    for (int v : c.vertices) os << ' ' << v;
    os << '\n';
  }
}

}  // namespace quadcurl
