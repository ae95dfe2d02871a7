#include "quadcurl/solver.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <Eigen/CholmodSupport>
#include <Eigen/IterativeLinearSolvers>

namespace quadcurl {

ElementTable tabulate(const FiniteElement& el, int order) { return tabulate(el, cell_rule(el.local_cell, order)); }

ElementTable tabulate(const FiniteElement& el, QuadratureRule points) {
  ElementTable t;
  t.rule = std::move(points);
  t.ndof = el.size();
  const std::size_t nq = t.rule.size();
  t.phi.resize(nq * t.ndof * 2);
  t.curl.resize(nq * t.ndof);
  t.curlcurl.resize(nq * t.ndof * 2);
  for (std::size_t i = 0; i < t.ndof; ++i) {
    const VectorField& v = el.dual[i];
    const Polynomial c = curl_vec(v);
    const VectorField cc = curl_scalar(c);
    for (std::size_t q = 0; q < nq; ++q) {
      const double x = t.rule.x[q], y = t.rule.y[q];
      t.phi[(q * t.ndof + i) * 2] = v.c1.evaluate(x, y);
      t.phi[(q * t.ndof + i) * 2 + 1] = v.c2.evaluate(x, y);
      t.curl[q * t.ndof + i] = c.evaluate(x, y);
      t.curlcurl[(q * t.ndof + i) * 2] = cc.c1.evaluate(x, y);
      t.curlcurl[(q * t.ndof + i) * 2 + 1] = cc.c2.evaluate(x, y);
    }
  }
  return t;
}

int stiffness_degree(const FiniteElement& el) {
  const bool tri = el.local_cell.shape() == Shape::Triangle;
  auto deg = [tri](const Polynomial& p) { return tri ? p.degree() : p.partial_degree(); };
  int d = 0;
  for (const auto& v : el.dual) {
    const VectorField cc = curl_scalar(curl_vec(v));
    d = std::max({d, deg(v.c1), deg(v.c2), deg(cc.c1), deg(cc.c2)});
  }
  return 2 * d;
}

namespace {

std::vector<FiniteElement> build_elements(const Mesh& mesh, Family f, int k) {
  require_supported(f, k, mesh.shape);
  std::vector<FiniteElement> out;
  for (int cls = 0; cls < mesh.num_classes; ++cls)
    out.push_back(make_element(f, k, mesh.cell_geometry(mesh.representative(cls))));
  return out;
}

}  // namespace

Discretization::Discretization(Mesh mesh, Family f, int k)
    : mesh_(std::move(mesh)),
      family_(f),
      k_(k),
      elements_(build_elements(mesh_, f, k)),
      map_(mesh_, dof_layout(elements_.at(0))) {}

std::array<double, 2> Discretization::origin(std::size_t cell) const {
  // Frame origin of the class representative, translated onto this cell.
  const int cls = mesh_.cells[cell].congruence_class;
  const MeshCell& rep = mesh_.cells[mesh_.representative(cls)];
  const Point& o = elements_.at(cls).frame().origin;
  const Point& a = mesh_.vertices[mesh_.cells[cell].vertices[0]];
  const Point& b = mesh_.vertices[rep.vertices[0]];
  return {Rational(o.x + a.x - b.x).get_d(), Rational(o.y + a.y - b.y).get_d()};
}

Eigen::MatrixXd element_matrix(const FiniteElement& el) {
  // Integrated exactly and rounded once: at h = 1/320 a quadrature-built matrix
  // carries enough rounding to spoil the superconvergent mid-line norm.
  const std::size_t n = el.size();
  std::vector<VectorField> cc;
  for (const auto& v : el.dual) cc.push_back(curl_scalar(curl_vec(v)));
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const Polynomial p = cc[i].c1 * cc[j].c1 + cc[i].c2 * cc[j].c2 + el.dual[i].c1 * el.dual[j].c1 +
                           el.dual[i].c2 * el.dual[j].c2;
      m(i, j) = m(j, i) = integrate_cell(p, el.local_cell).get_d();
    }
  return m;
}

SparseSystem assemble(const Discretization& d, const PointFn& f1, const PointFn& f2, int quad_order) {
  const Mesh& mesh = d.mesh();
  const GlobalDofMap& map = d.dof_map();
  std::vector<ElementTable> tables;
  std::vector<Eigen::MatrixXd> local;
  for (int cls = 0; cls < mesh.num_classes; ++cls) {
    const FiniteElement& el = d.element(cls);
    const int needed = stiffness_degree(el);
    if (quad_order < needed)
      throw ConfigError("quadrature order " + std::to_string(quad_order) + " is below " + std::to_string(needed) +
                        ", the degree of the element-matrix integrand for " +
                        describe(d.family(), d.k(), mesh.shape));
    tables.push_back(tabulate(el, quad_order));
    local.push_back(element_matrix(el));
  }

  SparseSystem s;
  const std::size_t n = map.size();
  s.b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  s.boundary = map.boundary();
  std::vector<Eigen::Triplet<double>> trip;
  const std::size_t nl = map.local_size();
  trip.reserve(mesh.num_cells() * nl * nl);
  std::vector<double> load(nl);
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const int cls = mesh.cells[c].congruence_class;
    const ElementTable& t = tables[cls];
    const Eigen::MatrixXd& m = local[cls];
    const auto o = d.origin(c);
    std::fill(load.begin(), load.end(), 0.0);
    for (std::size_t q = 0; q < t.nq(); ++q) {
      const double x = t.rule.x[q] + o[0], y = t.rule.y[q] + o[1];
      const double w1 = t.rule.w[q] * f1(x, y), w2 = t.rule.w[q] * f2(x, y);
      for (std::size_t i = 0; i < nl; ++i) {
        const double* p = t.phi_at(q, i);
        load[i] += w1 * p[0] + w2 * p[1];
      }
    }
    for (std::size_t i = 0; i < nl; ++i) {
      const int gi = map.index(c, i), si = map.sign(c, i);
      s.b[gi] += si * load[i];
      for (std::size_t j = 0; j < nl; ++j) {
        const double v = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        if (v != 0.0) trip.emplace_back(gi, map.index(c, j), si * map.sign(c, j) * v);
      }
    }
  }
  s.A.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  s.A.setFromTriplets(trip.begin(), trip.end());
  return s;
}

void apply_bc(SparseSystem& s) {
  for (Eigen::Index col = 0; col < s.A.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(s.A, col); it; ++it) {
      const auto r = it.row();
      if (s.boundary[r] || s.boundary[col]) it.valueRef() = (r == col) ? 1.0 : 0.0;
    }
  // Boundary DOFs whose diagonal was never stored still need the identity entry.
  std::vector<Eigen::Triplet<double>> missing;
  for (Eigen::Index i = 0; i < s.A.rows(); ++i)
    if (s.boundary[i] && s.A.coeff(i, i) == 0.0) missing.emplace_back(i, i, 1.0);
  if (!missing.empty()) {
    Eigen::SparseMatrix<double> add(s.A.rows(), s.A.cols());
    add.setFromTriplets(missing.begin(), missing.end());
    s.A += add;
  }
  s.A.prune(0.0);
  for (Eigen::Index i = 0; i < s.b.size(); ++i)
    if (s.boundary[i]) s.b[i] = 0.0;
}

namespace {

using VectorLD = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

VectorLD residual_ld(const Eigen::SparseMatrix<double>& A, const VectorLD& x, const Eigen::VectorXd& b) {
  VectorLD r = b.cast<long double>();
  for (Eigen::Index col = 0; col < A.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, col); it; ++it)
      r[it.row()] -= static_cast<long double>(it.value()) * x[col];
  return r;
}

double relative_norm(const VectorLD& r, const Eigen::VectorXd& b) {
  long double rn = 0, bn = 0;
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    rn += r[i] * r[i];
    bn += static_cast<long double>(b[i]) * b[i];
  }
  if (bn == 0) return static_cast<double>(std::sqrt(rn));
  return static_cast<double>(std::sqrt(rn / bn));
}

}  // namespace

double relative_residual(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& x, const Eigen::VectorXd& b) {
  return relative_norm(residual_ld(A, x.cast<long double>(), b), b);
}

SolveResult solve(const SparseSystem& s, const SolverOptions& opt) {
  const Eigen::Index n = s.A.rows();
  SolveResult res;
  if (s.b.norm() == 0.0) {
    res.x = Eigen::VectorXd::Zero(n);
    return res;
  }
  // Symmetric Jacobi scaling D A D with D = diag(A)^(-1/2).
  Eigen::VectorXd dscale(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double a = s.A.coeff(i, i);
    if (!(a > 0.0)) throw SolverFailure("matrix has a non-positive diagonal entry", 0.0);
    dscale[i] = 1.0 / std::sqrt(a);
  }
  const Eigen::SparseMatrix<double> scaled = dscale.asDiagonal() * s.A * dscale.asDiagonal();

  // Inner solves run in double on the scaled matrix; the iterate and the
  // residual are kept in long double, since the diagonal grows like h^-4 and
  // rounding x to double alone leaves a residual near the tolerance.
  Eigen::CholmodSupernodalLLT<Eigen::SparseMatrix<double>, Eigen::Lower> llt;
  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
  int max_steps = 10;
  if (opt.method == SolverMethod::Direct) {
    llt.compute(scaled);
    if (llt.info() != Eigen::Success) throw SolverFailure("Cholesky factorization failed", 0.0);
  } else {
    cg.setTolerance(1e-8);
    cg.setMaxIterations(opt.max_iterations);
    cg.compute(scaled);
    max_steps = 40;
  }
  auto inner = [&](const Eigen::VectorXd& r) -> Eigen::VectorXd {
    const Eigen::VectorXd rhs = dscale.asDiagonal() * r;
    if (opt.method == SolverMethod::Direct) return dscale.asDiagonal() * llt.solve(rhs);
    const Eigen::VectorXd y = cg.solve(rhs);
    res.iterations += static_cast<int>(cg.iterations());
    if (cg.info() == Eigen::NumericalIssue) throw SolverFailure("conjugate gradient broke down", 0.0);
    return dscale.asDiagonal() * y;
  };

  VectorLD x = inner(s.b).cast<long double>();
  VectorLD r = residual_ld(s.A, x, s.b);
  double rel = relative_norm(r, s.b);
  for (int step = 0; step < max_steps && rel > 0.01 * opt.tolerance; ++step) {
    VectorLD x1 = x + inner(r.cast<double>()).cast<long double>();
    VectorLD r1 = residual_ld(s.A, x1, s.b);
    const double rel1 = relative_norm(r1, s.b);
    if (!(rel1 < rel)) break;
    x = std::move(x1);
    r = std::move(r1);
    rel = rel1;
    if (opt.method == SolverMethod::Direct) res.iterations = step + 1;
  }
  res.x = x.cast<double>();
  res.relative_residual = rel;
  if (!(rel <= opt.tolerance)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "relative residual %.3e above tolerance %.1e", rel, opt.tolerance);
    throw SolverFailure(buf, rel);
  }
  return res;
}

void write_matrix(std::ostream& os, const Eigen::SparseMatrix<double>& A) {
  os.precision(17);
  for (Eigen::Index col = 0; col < A.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, col); it; ++it)
      os << it.row() << ' ' << col << ' ' << it.value() << '\n';
}

}  // namespace quadcurl
