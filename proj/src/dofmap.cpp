#include "quadcurl/dofmap.hpp"

#include <algorithm>

namespace quadcurl {

std::vector<DofSlot> dof_layout(const FiniteElement& el) {
  std::vector<DofSlot> out;
  for (const auto& d : el.dofs) {
    switch (d.kind) {
      case DofKind::VertexCurl: out.push_back({EntityType::Vertex, d.entity, 0}); break;
      case DofKind::EdgeTangentMoment:
      case DofKind::EdgeCurlMoment: out.push_back({EntityType::Edge, d.entity, d.parity()}); break;
      case DofKind::InteriorMoment: out.push_back({EntityType::Cell, -1, 0}); break;
    }
  }
  return out;
}

std::vector<DofSlot> dof_layout(const ScalarElement& el) {
  std::vector<DofSlot> out;
  for (const auto& d : el.dofs) {
    switch (d.kind) {
      case ScalarDofKind::VertexValue: out.push_back({EntityType::Vertex, d.entity, 0}); break;
      case ScalarDofKind::EdgeMoment: out.push_back({EntityType::Edge, d.entity, d.parity()}); break;
      case ScalarDofKind::InteriorMoment: out.push_back({EntityType::Cell, -1, 0}); break;
    }
  }
  return out;
}

GlobalDofMap::GlobalDofMap(const Mesh& mesh, const std::vector<DofSlot>& layout) : local_size_(layout.size()) {
  // Slot of each local DOF within its entity, counted in layout order.
  std::vector<int> slot(layout.size());
  std::vector<int> vertex_count(mesh.shape == Shape::Triangle ? 3 : 4, 0), edge_count(vertex_count.size(), 0);
  int cell_count = 0;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    switch (layout[i].type) {
      case EntityType::Vertex: slot[i] = vertex_count.at(layout[i].entity)++; break;
      case EntityType::Edge: slot[i] = edge_count.at(layout[i].entity)++; break;
      case EntityType::Cell: slot[i] = cell_count++; break;
    }
  }
  per_vertex_ = static_cast<std::size_t>(vertex_count[0]);
  per_edge_ = static_cast<std::size_t>(edge_count[0]);
  per_cell_ = static_cast<std::size_t>(cell_count);
  if (!std::all_of(vertex_count.begin(), vertex_count.end(), [&](int c) { return c == vertex_count[0]; }) ||
      !std::all_of(edge_count.begin(), edge_count.end(), [&](int c) { return c == edge_count[0]; }))
    throw Error("local DOF layout is not uniform over vertices and edges");

  const std::size_t edge_offset = mesh.num_vertices() * per_vertex_;
  const std::size_t cell_offset = edge_offset + mesh.num_edges() * per_edge_;
  total_ = cell_offset + mesh.num_cells() * per_cell_;
  index_.resize(mesh.num_cells() * local_size_);
  sign_.resize(index_.size());
  boundary_.assign(total_, false);
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const MeshCell& cell = mesh.cells[c];
    for (std::size_t i = 0; i < layout.size(); ++i) {
      std::size_t g = 0;
      int s = 1;
      switch (layout[i].type) {
        case EntityType::Vertex: {
          const int v = cell.vertices[layout[i].entity];
          g = v * per_vertex_ + slot[i];
          if (mesh.boundary_vertex[v]) boundary_[g] = true;
          break;
        }
        case EntityType::Edge: {
          const int e = cell.edges[layout[i].entity];
          g = edge_offset + e * per_edge_ + slot[i];
          if (cell.edge_signs[layout[i].entity] < 0 && layout[i].parity % 2 == 1) s = -1;
          if (mesh.boundary_edge[e]) boundary_[g] = true;
          break;
        }
        case EntityType::Cell: g = cell_offset + c * per_cell_ + slot[i]; break;
      }
      index_[c * local_size_ + i] = static_cast<int>(g);
      sign_[c * local_size_ + i] = static_cast<signed char>(s);
    }
  }
}

std::size_t GlobalDofMap::num_boundary() const {
  return static_cast<std::size_t>(std::count(boundary_.begin(), boundary_.end(), true));
}

}  // namespace quadcurl
