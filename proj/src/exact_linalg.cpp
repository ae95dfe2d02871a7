#include "quadcurl/exact_linalg.hpp"

#include <utility>

namespace quadcurl {

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("matrix shape mismatch");
  RationalMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Rational& x = a(i, l);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += x * b(l, j);
    }
  return c;
}

bool RationalMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

bool RationalMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

namespace {

// Gauss-Jordan to reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m, std::vector<Rational>* rhs = nullptr) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
      if (rhs) std::swap((*rhs)[p], (*rhs)[row]);
    }
    const Rational inv = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    if (rhs) (*rhs)[row] *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      const Rational f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        if (m(row, j) != 0) m(i, j) -= f * m(row, j);
      if (rhs) (*rhs)[i] -= f * (*rhs)[row];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(RationalMatrix m) { return rref(m).size(); }

std::optional<RationalMatrix> inverse(RationalMatrix m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw InvalidArgument("inverse of a non-square matrix");
  RationalMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  RationalMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

std::optional<std::vector<Rational>> solve(RationalMatrix m, std::vector<Rational> b) {
  if (b.size() != m.rows()) throw InvalidArgument("right-hand side size mismatch");
  auto piv = rref(m, &b);
  for (std::size_t i = piv.size(); i < m.rows(); ++i)
    if (b[i] != 0) return std::nullopt;
  std::vector<Rational> x(m.cols());
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = b[i];
  return x;
}

std::vector<std::vector<Rational>> null_space(RationalMatrix m) {
  auto piv = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<std::vector<Rational>> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m(i, f);
    out.push_back(std::move(v));
  }
  return out;
}

RationalMatrix coefficient_matrix(const std::vector<Polynomial>& ps) {
  std::map<Monomial, std::size_t> index;
  for (const auto& p : ps)
    for (const auto& [m, c] : p.terms()) index.try_emplace(m, 0);
  std::size_t r = 0;
  for (auto& [m, i] : index) i = r++;
  RationalMatrix out(index.size(), ps.size());
  for (std::size_t j = 0; j < ps.size(); ++j)
    for (const auto& [m, c] : ps[j].terms()) out(index[m], j) = c;
  return out;
}

RationalMatrix coefficient_matrix(const std::vector<VectorField>& vs) {
  // Stack the two components: encode c2 monomials with an exponent offset.
  std::vector<Polynomial> flat;
  flat.reserve(vs.size());
  int shift = 0;
  for (const auto& v : vs) shift = std::max(shift, v.c1.partial_degree() + 1);
  for (const auto& v : vs) {
    Polynomial p = v.c1;
    for (const auto& [m, c] : v.c2.terms()) p.add_term(m.a + shift, m.b, c);
    flat.push_back(std::move(p));
  }
  return coefficient_matrix(flat);
}

namespace {

template <class T>
bool spans_impl(const std::vector<T>& basis, const std::vector<T>& targets) {
  std::vector<T> all = basis;
  const std::size_t r0 = rank(coefficient_matrix(basis));
  all.insert(all.end(), targets.begin(), targets.end());
  return rank(coefficient_matrix(all)) == r0;
}

}  // namespace

bool spans(const std::vector<VectorField>& basis, const std::vector<VectorField>& targets) {
  return spans_impl(basis, targets);
}

bool spans(const std::vector<Polynomial>& basis, const std::vector<Polynomial>& targets) {
  return spans_impl(basis, targets);
}

bool SparseEliminator::add_row(SparseRow row) {
  for (auto it = row.begin(); it != row.end();) {
    if (it->second == 0) {
      it = row.erase(it);
      continue;
    }
    auto p = pivots_.find(it->first);
    if (p == pivots_.end()) {
      ++it;
      continue;
    }
    const Rational f = it->second;
    const std::size_t col = it->first;
    for (const auto& [c, v] : p->second) {
      auto [e, inserted] = row.try_emplace(c, -f * v);
      if (!inserted) e->second -= f * v;
    }
    // The leading entry cancels; continue after it (entries past col may have changed).
    it = row.upper_bound(col);
    row.erase(col);
  }
  for (auto it = row.begin(); it != row.end();) {
    if (it->second == 0)
      it = row.erase(it);
    else
      ++it;
  }
  if (row.empty()) return false;
  const std::size_t lead = row.begin()->first;
  const Rational inv = 1 / row.begin()->second;
  for (auto& [c, v] : row) v *= inv;
  pivots_.emplace(lead, std::move(row));
  return true;
}

std::size_t sparse_rank(const std::vector<SparseRow>& rows) {
  SparseEliminator e;
  for (const auto& r : rows) e.add_row(r);
  return e.rank();
}

}  // namespace quadcurl
