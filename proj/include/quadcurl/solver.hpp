#pragma once

// Assembly and solution of the discrete problem
//   (curl curl u, curl curl v) + (u, v) = (f, v)
// with tangential trace and curl set to zero on the boundary.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "quadcurl/dofmap.hpp"
#include "quadcurl/elements.hpp"
#include "quadcurl/mesh.hpp"
#include "quadcurl/quadrature.hpp"

namespace quadcurl {

/// Dual basis sampled at the quadrature points of one congruence class.
struct ElementTable {
  QuadratureRule rule;          // points in local coordinates
  std::size_t ndof = 0;
  std::vector<double> phi;       // [q][i][2]
  std::vector<double> curl;      // [q][i]
  std::vector<double> curlcurl;  // [q][i][2]

  [[nodiscard]] std::size_t nq() const { return rule.size(); }
  [[nodiscard]] const double* phi_at(std::size_t q, std::size_t i) const { return &phi[(q * ndof + i) * 2]; }
  [[nodiscard]] double curl_at(std::size_t q, std::size_t i) const { return curl[q * ndof + i]; }
  [[nodiscard]] const double* curlcurl_at(std::size_t q, std::size_t i) const {
    return &curlcurl[(q * ndof + i) * 2];
  }
};

ElementTable tabulate(const FiniteElement& el, int order);
/// Same, at arbitrary points given in local coordinates.
ElementTable tabulate(const FiniteElement& el, QuadratureRule points);

/// (curl^2 phi_j, curl^2 phi_i) + (phi_j, phi_i) integrated exactly, then rounded.
Eigen::MatrixXd element_matrix(const FiniteElement& el);

/// Degree the element-matrix integrand reaches: total degree on triangles,
/// degree per variable on rectangles.
int stiffness_degree(const FiniteElement& el);

/// Mesh + element cache + global numbering for one (family, k).
class Discretization {
 public:
  Discretization(Mesh mesh, Family f, int k);

  [[nodiscard]] const Mesh& mesh() const { return mesh_; }
  [[nodiscard]] Family family() const { return family_; }
  [[nodiscard]] int k() const { return k_; }
  [[nodiscard]] const FiniteElement& element(int cls) const { return elements_.at(cls); }
  [[nodiscard]] const GlobalDofMap& dof_map() const { return map_; }
  /// Local frame origin of a cell in floating point.
  [[nodiscard]] std::array<double, 2> origin(std::size_t cell) const;

 private:
  Mesh mesh_;
  Family family_;
  int k_;
  std::vector<FiniteElement> elements_;
  GlobalDofMap map_;
};

struct SparseSystem {
  Eigen::SparseMatrix<double> A;
  Eigen::VectorXd b;
  std::vector<bool> boundary;
};

/// Assembles A and b. Throws ConfigError if `quad_order` cannot integrate the
/// element matrix exactly.
SparseSystem assemble(const Discretization& d, const PointFn& f1, const PointFn& f2, int quad_order);

/// Boundary rows and columns replaced by the identity, b zeroed there.
void apply_bc(SparseSystem& s);

enum class SolverMethod { Direct, CG };

struct SolverOptions {
  SolverMethod method = SolverMethod::Direct;
  double tolerance = 1e-10;
  int max_iterations = 20000;
};

struct SolveResult {
  Eigen::VectorXd x;               // rounded from the long-double iterate
  double relative_residual = 0.0;  // of the long-double iterate
  int iterations = 0;              // refinement steps (direct) or total CG iterations
};

/// Throws SolverFailure when the relative residual stays above the tolerance.
SolveResult solve(const SparseSystem& s, const SolverOptions& opt);

/// ||A x - b|| / ||b|| with the residual accumulated in long double.
double relative_residual(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& x, const Eigen::VectorXd& b);

/// Coordinate-format dump, `i j value` per line, 0-based.
void write_matrix(std::ostream& os, const Eigen::SparseMatrix<double>& A);

}  // namespace quadcurl
