#pragma once

// Degrees of freedom, dualization and local interpolation for the vector
// elements on V and the scalar elements on Sigma and W.

#include <functional>
#include <string>
#include <vector>

#include "quadcurl/exact_linalg.hpp"
#include "quadcurl/spaces.hpp"

namespace quadcurl {

enum class DofKind { VertexCurl, EdgeTangentMoment, EdgeCurlMoment, InteriorMoment };

/// Edge moments integrate against the Legendre polynomial q_j(t) in the edge
/// parameter t in [0, 1] running along the local edge direction. Tangent moments
/// use u.d dt (= u.tau ds); curl moments are divided by |e| so they stay rational.
struct DofFunctional {
  DofKind kind = DofKind::VertexCurl;
  int entity = -1;  // local vertex or edge index; -1 for interior moments
  int degree = 0;   // j for edge moments
  VectorField test_field;

  /// Sign of the global functional is o^parity for edge orientation o = +-1.
  [[nodiscard]] int parity() const;
};

using DofSet = std::vector<DofFunctional>;

bool is_supported(Family f, int k, Shape s);
/// Throws UnsupportedCombination outside tri k in {2,3,4}, rect k in {2,3}.
void require_supported(Family f, int k, Shape s);
std::string describe(Family f, int k, Shape s);

/// Interior test fields (D on triangles, G1 + G2 on rectangles) in local coordinates.
std::vector<VectorField> interior_test_fields(Family f, int k, Shape s);

/// DOF set on a cell given in local-frame coordinates.
DofSet build_dofs(Family f, int k, const CellGeometry& local_cell);

Rational apply_dof(const DofFunctional& d, const CellGeometry& local_cell, const VectorField& v);

struct FiniteElement {
  Family family = Family::New;
  int k = 2;
  VectorSpace space;
  CellGeometry local_cell;
  DofSet dofs;
  std::vector<VectorField> dual;  // dofs[i](dual[j]) = delta_ij

  [[nodiscard]] const LocalFrame& frame() const { return space.frame; }
  [[nodiscard]] std::size_t size() const { return dofs.size(); }
};

/// Builds V, its DOFs and the dual basis on `cell` with the standard frame.
FiniteElement make_element(Family f, int k, const CellGeometry& cell);

/// Exact dualization; UnisolvenceFailure if the DOF/basis matrix is singular.
FiniteElement dualize(Family f, int k, VectorSpace space, DofSet dofs);

/// Matrix M_ij = dofs[i](members[j]).
RationalMatrix dof_matrix(const DofSet& dofs, const CellGeometry& local_cell, const std::vector<VectorField>& members);

/// Polynomial in global coordinates rewritten in the frame's local coordinates.
Polynomial to_local(const Polynomial& p, const LocalFrame& frame);
VectorField to_local(const VectorField& v, const LocalFrame& frame);

std::vector<Rational> dof_values(const FiniteElement& el, const VectorField& v_local);
VectorField interpolate_local(const FiniteElement& el, const VectorField& v_local);

using PointFn = std::function<double(double, double)>;

/// DOF values of a smooth field by quadrature. All functions take global
/// coordinates; the curl is required because vertex and edge DOFs use it.
std::vector<double> dof_values_numeric(const FiniteElement& el, const PointFn& u1, const PointFn& u2,
                                       const PointFn& curl, int order = 16);

// Scalar elements.

enum class ScalarDofKind { VertexValue, EdgeMoment, InteriorMoment };

struct ScalarDof {
  ScalarDofKind kind = ScalarDofKind::VertexValue;
  int entity = -1;
  int degree = 0;
  Polynomial weight;  // interior moments only

  [[nodiscard]] int parity() const { return kind == ScalarDofKind::EdgeMoment ? degree : 0; }
};

struct ScalarElement {
  ScalarSpace space;
  CellGeometry local_cell;
  std::vector<ScalarDof> dofs;
  std::vector<Polynomial> dual;

  [[nodiscard]] std::size_t size() const { return dofs.size(); }
};

Rational apply_dof(const ScalarDof& d, const CellGeometry& local_cell, const Polynomial& p);

/// Lagrange element of degree r: vertex values, edge moments against P_{r-2},
/// interior moments against P_{r-3} (triangle) or Q_{r-2} (rectangle).
ScalarElement sigma_element(int r, const CellGeometry& cell);
/// Lagrange element of degree k-1, plus the integral over K when the bubble is present.
ScalarElement w_element(int k, const CellGeometry& cell);

std::vector<Rational> dof_values(const ScalarElement& el, const Polynomial& p_local);
Polynomial interpolate_local(const ScalarElement& el, const Polynomial& p_local);

}  // namespace quadcurl
