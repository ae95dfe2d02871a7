#include "quadcurl/elements.hpp"

#include "quadcurl/quadrature.hpp"

namespace quadcurl {

int DofFunctional::parity() const {
  switch (kind) {
    case DofKind::EdgeTangentMoment: return degree + 1;
    case DofKind::EdgeCurlMoment: return degree;
    default: return 0;
  }
}

bool is_supported(Family, int k, Shape s) {
  return s == Shape::Triangle ? (k >= 2 && k <= 4) : (k >= 2 && k <= 3);
}

std::string describe(Family f, int k, Shape s) {
  return std::string("(") + to_string(f) + ", k=" + std::to_string(k) + ", " + to_string(s) + ")";
}

void require_supported(Family f, int k, Shape s) {
  if (!is_supported(f, k, s)) throw UnsupportedCombination("unsupported combination " + describe(f, k, s));
}

namespace {

// Homogeneous monomials of degree j times the position field.
void add_homogeneous_times_x(std::vector<VectorField>& out, int j) {
  if (j < 0) return;
  for (int b = 0; b <= j; ++b) out.push_back(Polynomial::monomial(j - b, b) * position());
}

void add_full_times_x(std::vector<VectorField>& out, int m) {
  for (int j = 0; j <= m; ++j) add_homogeneous_times_x(out, j);
}

void add_vector_polynomials(std::vector<VectorField>& out, int m) {
  for (const auto& p : monomial_basis(Shape::Triangle, m)) {
    out.push_back({p, Polynomial()});
    out.push_back({Polynomial(), p});
  }
}

int tangent_moment_max(Family f, int k) {
  switch (f) {
    case Family::New: return k - 2;
    case Family::Mid: return k - 1;
    case Family::High: return k;
  }
  return 0;
}

double eval(const Univariate& p, double t) {
  double s = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * t + it->get_d();
  return s;
}

}  // namespace

std::vector<VectorField> interior_test_fields(Family f, int k, Shape s) {
  std::vector<VectorField> out;
  if (s == Shape::Triangle) {
    if (k >= 5) {
      add_vector_polynomials(out, k - 5);
      add_homogeneous_times_x(out, k - 5);
      add_homogeneous_times_x(out, k - 4);
      if (f != Family::New) add_homogeneous_times_x(out, k - 3);
      if (f == Family::High) add_homogeneous_times_x(out, k - 2);
      return out;
    }
    switch (f) {
      case Family::New:
        if (k == 4) add_full_times_x(out, 0);
        break;
      case Family::Mid:
        if (k >= 3) add_full_times_x(out, k - 3);
        break;
      case Family::High:
        add_full_times_x(out, k - 2);
        break;
    }
    return out;
  }
  const int m = f == Family::New ? k - 3 : (f == Family::Mid ? k - 2 : k - 1);
  for (const auto& psi : monomial_basis(Shape::Rectangle, m)) out.push_back(psi * position());
  if (k >= 3)
    for (const auto& phi : monomial_basis(Shape::Rectangle, k - 3))
      if (phi.degree() > 0) out.push_back(curl_scalar(phi));
  return out;
}

DofSet build_dofs(Family f, int k, const CellGeometry& local_cell) {
  DofSet d;
  for (std::size_t v = 0; v < local_cell.num_vertices(); ++v)
    d.push_back({DofKind::VertexCurl, static_cast<int>(v), 0, {}});
  const int mt = tangent_moment_max(f, k);
  for (std::size_t e = 0; e < local_cell.num_edges(); ++e) {
    for (int j = 0; j <= mt; ++j) d.push_back({DofKind::EdgeTangentMoment, static_cast<int>(e), j, {}});
    for (int j = 0; j <= k - 3; ++j) d.push_back({DofKind::EdgeCurlMoment, static_cast<int>(e), j, {}});
  }
  for (auto& q : interior_test_fields(f, k, local_cell.shape())) d.push_back({DofKind::InteriorMoment, -1, 0, q});
  return d;
}

Rational apply_dof(const DofFunctional& d, const CellGeometry& cell, const VectorField& v) {
  switch (d.kind) {
    case DofKind::VertexCurl: {
      const Point& p = cell.vertices().at(d.entity);
      return curl_vec(v)(p.x, p.y);
    }
    case DofKind::EdgeTangentMoment: {
      const Point a = cell.edge(d.entity).first;
      const Point dir = cell.edge_direction(d.entity);
      auto tr = restrict_to_segment(dir.x * v.c1 + dir.y * v.c2, a, dir);
      return integrate_unit_interval(multiply(tr, legendre_on_unit_interval(d.degree)));
    }
    case DofKind::EdgeCurlMoment: {
      const Point a = cell.edge(d.entity).first;
      auto tr = restrict_to_segment(curl_vec(v), a, cell.edge_direction(d.entity));
      return integrate_unit_interval(multiply(tr, legendre_on_unit_interval(d.degree)));
    }
    case DofKind::InteriorMoment:
      return integrate_cell(dot(v, d.test_field), cell);
  }
  return 0;
}

RationalMatrix dof_matrix(const DofSet& dofs, const CellGeometry& cell, const std::vector<VectorField>& members) {
  RationalMatrix m(dofs.size(), members.size());
  for (std::size_t i = 0; i < dofs.size(); ++i)
    for (std::size_t j = 0; j < members.size(); ++j) m(i, j) = apply_dof(dofs[i], cell, members[j]);
  return m;
}

FiniteElement dualize(Family f, int k, VectorSpace space, DofSet dofs) {
  const CellGeometry local = space.frame.local_cell();
  const Shape shape = local.shape();
  if (dofs.size() != space.members.size())
    throw UnisolvenceFailure(describe(f, k, shape) + ": " + std::to_string(dofs.size()) + " DOFs for a space of dimension " +
                             std::to_string(space.members.size()));
  auto inv = inverse(dof_matrix(dofs, local, space.members));
  if (!inv) throw UnisolvenceFailure(describe(f, k, shape) + ": DOF matrix is singular");
  FiniteElement el;
  el.family = f;
  el.k = k;
  el.local_cell = local;
  el.dofs = std::move(dofs);
  el.dual.resize(space.members.size());
  for (std::size_t i = 0; i < el.dual.size(); ++i)
    for (std::size_t j = 0; j < space.members.size(); ++j) {
      const Rational& c = (*inv)(j, i);
      if (c != 0) el.dual[i] += c * space.members[j];
    }
  el.space = std::move(space);
  return el;
}

FiniteElement make_element(Family f, int k, const CellGeometry& cell) {
  require_supported(f, k, cell.shape());
  const LocalFrame frame = LocalFrame::standard(cell);
  VectorSpace space = v_space(sigma_degree(f, k), k, frame);
  DofSet dofs = build_dofs(f, k, frame.local_cell());
  return dualize(f, k, std::move(space), std::move(dofs));
}

Polynomial to_local(const Polynomial& p, const LocalFrame& frame) { return p.shifted(frame.origin.x, frame.origin.y); }

VectorField to_local(const VectorField& v, const LocalFrame& frame) {
  return {to_local(v.c1, frame), to_local(v.c2, frame)};
}

std::vector<Rational> dof_values(const FiniteElement& el, const VectorField& v) {
  std::vector<Rational> out;
  out.reserve(el.dofs.size());
  for (const auto& d : el.dofs) out.push_back(apply_dof(d, el.local_cell, v));
  return out;
}

VectorField interpolate_local(const FiniteElement& el, const VectorField& v) {
  auto vals = dof_values(el, v);
  VectorField out;
  for (std::size_t i = 0; i < vals.size(); ++i)
    if (vals[i] != 0) out += vals[i] * el.dual[i];
  return out;
}

std::vector<double> dof_values_numeric(const FiniteElement& el, const PointFn& u1, const PointFn& u2,
                                       const PointFn& curl, int order) {
  if (!u1 || !u2) throw InvalidArgument("interpolation needs both field components");
  if (!curl) throw InvalidArgument("interpolation needs the analytic curl of the field");
  const double ox = el.frame().origin.x.get_d(), oy = el.frame().origin.y.get_d();
  const Rule1D g = gauss_legendre(order / 2 + 1);
  const QuadratureRule q = cell_rule(el.local_cell, order);
  std::vector<double> out;
  out.reserve(el.dofs.size());
  for (const auto& d : el.dofs) {
    double val = 0.0;
    switch (d.kind) {
      case DofKind::VertexCurl: {
        const Point& p = el.local_cell.vertices().at(d.entity);
        val = curl(p.x.get_d() + ox, p.y.get_d() + oy);
        break;
      }
      case DofKind::EdgeTangentMoment:
      case DofKind::EdgeCurlMoment: {
        const Point a = el.local_cell.edge(d.entity).first;
        const Point dir = el.local_cell.edge_direction(d.entity);
        const auto qj = legendre_on_unit_interval(d.degree);
        const double ax = a.x.get_d() + ox, ay = a.y.get_d() + oy, dx = dir.x.get_d(), dy = dir.y.get_d();
        for (std::size_t i = 0; i < g.t.size(); ++i) {
          const double x = ax + g.t[i] * dx, y = ay + g.t[i] * dy;
          const double f = d.kind == DofKind::EdgeCurlMoment ? curl(x, y) : u1(x, y) * dx + u2(x, y) * dy;
          val += g.w[i] * f * eval(qj, g.t[i]);
        }
        break;
      }
      case DofKind::InteriorMoment:
        for (std::size_t i = 0; i < q.size(); ++i) {
          const double x = q.x[i] + ox, y = q.y[i] + oy;
          val += q.w[i] * (u1(x, y) * d.test_field.c1.evaluate(q.x[i], q.y[i]) +
                           u2(x, y) * d.test_field.c2.evaluate(q.x[i], q.y[i]));
        }
        break;
    }
    out.push_back(val);
  }
  return out;
}

Rational apply_dof(const ScalarDof& d, const CellGeometry& cell, const Polynomial& p) {
  switch (d.kind) {
    case ScalarDofKind::VertexValue: {
      const Point& v = cell.vertices().at(d.entity);
      return p(v.x, v.y);
    }
    case ScalarDofKind::EdgeMoment: {
      auto tr = restrict_to_segment(p, cell.edge(d.entity).first, cell.edge_direction(d.entity));
      return integrate_unit_interval(multiply(tr, legendre_on_unit_interval(d.degree)));
    }
    case ScalarDofKind::InteriorMoment:
      return integrate_cell(p * d.weight, cell);
  }
  return 0;
}

namespace {

std::vector<ScalarDof> lagrange_dofs(int r, const CellGeometry& cell) {
  std::vector<ScalarDof> d;
  for (std::size_t v = 0; v < cell.num_vertices(); ++v) d.push_back({ScalarDofKind::VertexValue, static_cast<int>(v), 0, {}});
  for (std::size_t e = 0; e < cell.num_edges(); ++e)
    for (int j = 0; j <= r - 2; ++j) d.push_back({ScalarDofKind::EdgeMoment, static_cast<int>(e), j, {}});
  const int m = cell.shape() == Shape::Triangle ? r - 3 : r - 2;
  for (auto& w : monomial_basis(cell.shape(), m)) d.push_back({ScalarDofKind::InteriorMoment, -1, 0, w});
  return d;
}

ScalarElement dualize_scalar(ScalarSpace space, std::vector<ScalarDof> dofs, const std::string& label) {
  ScalarElement el;
  el.local_cell = space.frame.local_cell();
  if (dofs.size() != space.members.size())
    throw UnisolvenceFailure(label + ": DOF count does not match the space dimension");
  RationalMatrix m(dofs.size(), dofs.size());
  for (std::size_t i = 0; i < dofs.size(); ++i)
    for (std::size_t j = 0; j < dofs.size(); ++j) m(i, j) = apply_dof(dofs[i], el.local_cell, space.members[j]);
  auto inv = inverse(m);
  if (!inv) throw UnisolvenceFailure(label + ": DOF matrix is singular");
  el.dual.resize(dofs.size());
  for (std::size_t i = 0; i < dofs.size(); ++i)
    for (std::size_t j = 0; j < dofs.size(); ++j)
      if ((*inv)(j, i) != 0) el.dual[i] += (*inv)(j, i) * space.members[j];
  el.dofs = std::move(dofs);
  el.space = std::move(space);
  return el;
}

}  // namespace

ScalarElement sigma_element(int r, const CellGeometry& cell) {
  ScalarSpace s = sigma_space(r, LocalFrame::standard(cell));
  auto dofs = lagrange_dofs(r, s.frame.local_cell());
  return dualize_scalar(std::move(s), std::move(dofs), "Sigma r=" + std::to_string(r));
}

ScalarElement w_element(int k, const CellGeometry& cell) {
  ScalarSpace s = w_space(k, LocalFrame::standard(cell));
  auto dofs = lagrange_dofs(k - 1, s.frame.local_cell());
  if (s.has_bubble) dofs.push_back({ScalarDofKind::InteriorMoment, -1, 0, Polynomial(1)});
  return dualize_scalar(std::move(s), std::move(dofs), "W k=" + std::to_string(k));
}

std::vector<Rational> dof_values(const ScalarElement& el, const Polynomial& p) {
  std::vector<Rational> out;
  for (const auto& d : el.dofs) out.push_back(apply_dof(d, el.local_cell, p));
  return out;
}

Polynomial interpolate_local(const ScalarElement& el, const Polynomial& p) {
  auto vals = dof_values(el, p);
  Polynomial out;
  for (std::size_t i = 0; i < vals.size(); ++i)
    if (vals[i] != 0) out += vals[i] * el.dual[i];
  return out;
}

}  // namespace quadcurl
