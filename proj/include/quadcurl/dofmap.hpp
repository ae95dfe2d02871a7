#pragma once

// Global numbering of entity-attached DOFs with orientation signs.

#include <vector>

#include "quadcurl/elements.hpp"
#include "quadcurl/mesh.hpp"

namespace quadcurl {

enum class EntityType { Vertex, Edge, Cell };

/// Where a local DOF lives and how its sign depends on edge orientation.
struct DofSlot {
  EntityType type = EntityType::Cell;
  int entity = -1;  // local vertex or edge index
  int parity = 0;
};

std::vector<DofSlot> dof_layout(const FiniteElement& el);
std::vector<DofSlot> dof_layout(const ScalarElement& el);

class GlobalDofMap {
 public:
  GlobalDofMap(const Mesh& mesh, const std::vector<DofSlot>& layout);

  [[nodiscard]] std::size_t size() const { return total_; }
  [[nodiscard]] std::size_t local_size() const { return local_size_; }
  [[nodiscard]] std::size_t per_vertex() const { return per_vertex_; }
  [[nodiscard]] std::size_t per_edge() const { return per_edge_; }
  [[nodiscard]] std::size_t per_cell() const { return per_cell_; }

  /// Global index and sign (+-1) of local DOF i on cell c.
  [[nodiscard]] int index(std::size_t c, std::size_t i) const { return index_[c * local_size_ + i]; }
  [[nodiscard]] int sign(std::size_t c, std::size_t i) const { return sign_[c * local_size_ + i]; }
  [[nodiscard]] const std::vector<bool>& boundary() const { return boundary_; }
  [[nodiscard]] std::size_t num_boundary() const;

 private:
  std::size_t local_size_ = 0;
  std::size_t per_vertex_ = 0, per_edge_ = 0, per_cell_ = 0;
  std::size_t total_ = 0;
  std::vector<int> index_;
  std::vector<signed char> sign_;
  std::vector<bool> boundary_;
};

}  // namespace quadcurl
