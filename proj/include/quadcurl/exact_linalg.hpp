#pragma once

// Dense and sparse linear algebra over the rationals. Used for dualization,
// span/containment tests and exact rank computations.

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "quadcurl/polycore.hpp"

namespace quadcurl {

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] RationalMatrix transpose() const;
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  [[nodiscard]] bool is_identity() const;
  [[nodiscard]] bool is_zero() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

std::size_t rank(RationalMatrix m);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<RationalMatrix> inverse(RationalMatrix m);

/// Solves m x = b for one right-hand side; nullopt when inconsistent.
/// Free variables are set to zero.
std::optional<std::vector<Rational>> solve(RationalMatrix m, std::vector<Rational> b);

/// Basis of the right null space, one vector per entry.
std::vector<std::vector<Rational>> null_space(RationalMatrix m);

/// Coefficient matrix of a list of polynomials: one column per polynomial,
/// one row per monomial occurring in any of them.
RationalMatrix coefficient_matrix(const std::vector<Polynomial>& ps);
RationalMatrix coefficient_matrix(const std::vector<VectorField>& vs);

/// True when every member of `targets` lies in the span of `basis`.
bool spans(const std::vector<VectorField>& basis, const std::vector<VectorField>& targets);
bool spans(const std::vector<Polynomial>& basis, const std::vector<Polynomial>& targets);

/// Sparse rows keyed by column index.
using SparseRow = std::map<std::size_t, Rational>;

/// Incremental row echelon form for exact rank of large sparse matrices.
class SparseEliminator {
 public:
  /// Reduces the row against the current pivots; returns true if it was independent.
  bool add_row(SparseRow row);
  [[nodiscard]] std::size_t rank() const { return pivots_.size(); }

 private:
  std::map<std::size_t, SparseRow> pivots_;  // leading column -> normalized row
};

std::size_t sparse_rank(const std::vector<SparseRow>& rows);

}  // namespace quadcurl
