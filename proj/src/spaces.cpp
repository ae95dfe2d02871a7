#include "quadcurl/spaces.hpp"

#include "quadcurl/exact_linalg.hpp"

namespace quadcurl {

const char* to_string(Family f) {
  switch (f) {
    case Family::New: return "new";
    case Family::Mid: return "mid";
    case Family::High: return "high";
  }
  return "?";
}

int sigma_degree(Family f, int k) {
  switch (f) {
    case Family::New: return k - 1;
    case Family::Mid: return k;
    case Family::High: return k + 1;
  }
  return 0;
}

LocalFrame LocalFrame::standard(const CellGeometry& cell) {
  const auto& v = cell.vertices();
  if (v == CellGeometry::reference_triangle().vertices() || v == CellGeometry::reference_rectangle().vertices())
    return {cell, Point{0, 0}};
  return {cell, cell.barycenter()};
}

std::vector<Polynomial> monomial_basis(Shape shape, int d) {
  std::vector<Polynomial> out;
  if (shape == Shape::Triangle) {
    for (int t = 0; t <= d; ++t)
      for (int b = 0; b <= t; ++b) out.push_back(Polynomial::monomial(t - b, b));
  } else {
    for (int a = 0; a <= d; ++a)
      for (int b = 0; b <= d; ++b) out.push_back(Polynomial::monomial(a, b));
  }
  return out;
}

Polynomial bubble(const CellGeometry& cell) {
  if (cell.shape() == Shape::Triangle) return cell.barycentric(0) * cell.barycentric(1) * cell.barycentric(2);
  const Rational hx = cell.x_right() - cell.x_left();
  const Rational hy = cell.y_up() - cell.y_down();
  const Polynomial x = Polynomial::x1(), y = Polynomial::x2();
  Polynomial b = (x - Polynomial(cell.x_left())) * (x - Polynomial(cell.x_right())) *
                 (y - Polynomial(cell.y_down())) * (y - Polynomial(cell.y_up()));
  return b * Rational(1 / (hx * hx * hy * hy));
}

bool w_has_bubble(Shape shape, int k) {
  return shape == Shape::Triangle ? (k == 2 || k == 3) : k == 2;
}

ScalarSpace sigma_space(int r, const LocalFrame& frame) {
  if (r < 1) throw InvalidArgument("Sigma needs r >= 1");
  return {SpaceKind::Sigma, r, frame, monomial_basis(frame.cell.shape(), r), false};
}

ScalarSpace w_space(int k, const LocalFrame& frame) {
  if (k < 2) throw InvalidArgument("W needs k >= 2");
  const Shape s = frame.cell.shape();
  ScalarSpace w{SpaceKind::W, k, frame, monomial_basis(s, k - 1), w_has_bubble(s, k)};
  if (w.has_bubble) w.members.push_back(bubble(frame.local_cell()));
  return w;
}

bool uses_modified_poincare(int r, int k) { return r == k - 1 || (r == k && (k == 2 || k == 3)); }

namespace {

Univariate antiderivative(const Univariate& p) {
  Univariate out(p.size() + 1, Rational(0));
  for (std::size_t i = 0; i < p.size(); ++i) out[i + 1] = p[i] / Rational(static_cast<long>(i + 1));
  return out;
}

Rational eval(const Univariate& p, const Rational& t) {
  Rational s = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * t + *it;
  return s;
}

std::vector<Point> lagrange_nodes(const CellGeometry& cell, int d) {
  std::vector<Point> out;
  const auto& v = cell.vertices();
  if (cell.shape() == Shape::Triangle) {
    for (int i = 0; i <= d; ++i)
      for (int j = 0; i + j <= d; ++j) {
        const Rational s = fraction(i, d), t = fraction(j, d);
        out.push_back({v[0].x + s * (v[1].x - v[0].x) + t * (v[2].x - v[0].x),
                       v[0].y + s * (v[1].y - v[0].y) + t * (v[2].y - v[0].y)});
      }
  } else {
    const Rational hx = cell.x_right() - cell.x_left(), hy = cell.y_up() - cell.y_down();
    for (int i = 0; i <= d; ++i)
      for (int j = 0; j <= d; ++j)
        out.push_back({cell.x_left() + hx * fraction(i, d), cell.y_down() + hy * fraction(j, d)});
  }
  return out;
}

}  // namespace

ModifiedPoincare modified_poincare(const Polynomial& u, const CellGeometry& cell) {
  VectorField v = poincare(u);
  if (u.is_zero()) return {v, Polynomial()};
  const int du = cell.shape() == Shape::Triangle ? u.degree() : u.partial_degree();
  const int d = std::max(du, 1) + 1;

  // psi_e(s) = integral_0^s (v.d - mean) on each edge, parameterized by A + s d.
  std::vector<Univariate> psi;
  for (std::size_t e = 0; e < cell.num_edges(); ++e) {
    const Point a = cell.edge(e).first;
    const Point dir = cell.edge_direction(e);
    Univariate tr = restrict_to_segment(dir.x * v.c1 + dir.y * v.c2, a, dir);
    tr[0] -= integrate_unit_interval(tr);
    psi.push_back(antiderivative(tr));
  }

  const auto nodes = lagrange_nodes(cell, d);
  const auto basis = monomial_basis(cell.shape(), d);
  RationalMatrix m(nodes.size(), basis.size());
  std::vector<Rational> rhs(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Point& p = nodes[i];
    for (std::size_t j = 0; j < basis.size(); ++j) m(i, j) = basis[j](p.x, p.y);
    for (std::size_t e = 0; e < cell.num_edges(); ++e) {
      const Point a = cell.edge(e).first;
      const Point dir = cell.edge_direction(e);
      const Rational rx = p.x - a.x, ry = p.y - a.y;
      if (rx * dir.y - ry * dir.x != 0) continue;
      const Rational s = (rx * dir.x + ry * dir.y) / cell.edge_length_squared(e);
      if (s > 0 && s < 1) rhs[i] = eval(psi[e], s);
    }
  }
  auto coef = solve(m, rhs);
  if (!coef) throw UnisolvenceFailure("Lagrange interpolation for the modified Poincare operator failed");
  Polynomial phi;
  for (std::size_t j = 0; j < basis.size(); ++j) phi += (*coef)[j] * basis[j];
  return {v - grad(phi), phi};
}

VectorSpace v_space(int r, int k, const LocalFrame& frame) {
  if (k < 2 || r < k - 1 || r > k + 1 || r < 1)
    throw UnsupportedCombination("invalid (r, k) = (" + std::to_string(r) + ", " + std::to_string(k) + ")");
  VectorSpace v;
  v.r = r;
  v.k = k;
  v.frame = frame;
  v.modified = uses_modified_poincare(r, k);
  for (const auto& p : sigma_space(r, frame).members)
    if (p.degree() > 0) v.members.push_back(grad(p));
  v.num_gradients = v.members.size();
  const CellGeometry local = frame.local_cell();
  for (const auto& w : w_space(k, frame).members)
    v.members.push_back(v.modified ? modified_poincare(w, local).field : poincare(w));
  if (rank(coefficient_matrix(v.members)) != v.members.size())
    throw Error("V spanning set is not linearly independent");
  return v;
}

std::size_t v_dimension(Shape shape, int r, int k) {
  auto dim = [&](int d) {
    return shape == Shape::Triangle ? static_cast<std::size_t>((d + 1) * (d + 2) / 2)
                                    : static_cast<std::size_t>((d + 1) * (d + 1));
  };
  return dim(r) - 1 + dim(k - 1) + (w_has_bubble(shape, k) ? 1 : 0);
}

}  // namespace quadcurl
