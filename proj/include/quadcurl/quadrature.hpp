#pragma once

#include <vector>

#include "quadcurl/polycore.hpp"

namespace quadcurl {

/// Gauss-Legendre nodes and weights on [0, 1].
struct Rule1D {
  std::vector<double> t;
  std::vector<double> w;
};

Rule1D gauss_legendre(int n);

struct QuadratureRule {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> w;
  [[nodiscard]] std::size_t size() const { return w.size(); }
};

/// Rule exact for polynomials of the given order: total degree on triangles
/// (collapsed Gauss product), degree per variable on rectangles (tensor Gauss).
QuadratureRule cell_rule(const CellGeometry& cell, int order);

/// Points per direction used by cell_rule for this order.
int points_for_order(Shape shape, int order);

}  // namespace quadcurl
