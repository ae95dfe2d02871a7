#pragma once

// Local spaces Sigma^r (Lagrange), W^{k-1} (with bubble in the low-order
// cases) and V^{r-1,k} = grad Sigma/R + p W or p~ W, built on a concrete cell.

#include <string>
#include <vector>

#include "quadcurl/polycore.hpp"

namespace quadcurl {

/// new: r = k-1, mid: r = k, high: r = k+1.
enum class Family { New, Mid, High };

const char* to_string(Family f);
int sigma_degree(Family f, int k);

/// Cell together with the base point of p and kappa. All local polynomials
/// are written in the coordinates y = x - origin.
struct LocalFrame {
  CellGeometry cell;
  Point origin;

  /// Barycenter, except for the two reference cells, which keep the global origin.
  static LocalFrame standard(const CellGeometry& cell);
  [[nodiscard]] CellGeometry local_cell() const { return cell.translated(-origin.x, -origin.y); }
};

enum class SpaceKind { Sigma, W, V };

struct ScalarSpace {
  SpaceKind kind = SpaceKind::Sigma;
  int order = 0;  // r for Sigma, k for W (polynomial degree k-1)
  LocalFrame frame;
  std::vector<Polynomial> members;
  bool has_bubble = false;
};

struct VectorSpace {
  int r = 0;
  int k = 0;
  LocalFrame frame;
  bool modified = false;  // p~ instead of p on the W part
  std::vector<VectorField> members;
  std::size_t num_gradients = 0;  // leading members are gradients
};

/// Monomials x1^a x2^b spanning P_d (triangle) or Q_d (rectangle); empty for d < 0.
std::vector<Polynomial> monomial_basis(Shape shape, int d);

/// B_t = l1 l2 l3 or B_r = hx^-2 hy^-2 (x-xl)(x-xr)(y-yd)(y-yu) on the given cell.
Polynomial bubble(const CellGeometry& cell);

ScalarSpace sigma_space(int r, const LocalFrame& frame);
ScalarSpace w_space(int k, const LocalFrame& frame);
bool w_has_bubble(Shape shape, int k);

/// True when V uses the modified operator (r = k-1, or r = k with k = 2, 3).
bool uses_modified_poincare(int r, int k);

struct ModifiedPoincare {
  VectorField field;  // p u - grad phi
  Polynomial phi;
};

/// p~ u on `cell` (given in the frame's coordinates). phi is the Lagrange
/// interpolant of degree deg(u)+1 (P or Q) with zero vertex and interior
/// nodal values and edge nodal values from the integrated zero-mean trace.
ModifiedPoincare modified_poincare(const Polynomial& u, const CellGeometry& cell);

VectorSpace v_space(int r, int k, const LocalFrame& frame);

/// dim V from the direct-sum formula (dim Sigma - 1) + dim W.
std::size_t v_dimension(Shape shape, int r, int k);

}  // namespace quadcurl
