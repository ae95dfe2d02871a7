#include "quadcurl/polycore.hpp"

#include <cmath>
#include <sstream>

namespace quadcurl {

Rational fraction(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{0, 0}, c);
}

Polynomial::Polynomial(int c) : Polynomial(Rational(c)) {}

Polynomial Polynomial::monomial(int a, int b, const Rational& c) {
  if (a < 0 || b < 0) throw InvalidArgument("negative monomial exponent");
  Polynomial p;
  p.add_term(a, b, c);
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.a + m.b);
  return d;
}

int Polynomial::partial_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max({d, m.a, m.b});
  return d;
}

Rational Polynomial::coeff(int a, int b) const {
  auto it = terms_.find({a, b});
  return it == terms_.end() ? Rational(0) : it->second;
}

Polynomial Polynomial::homogeneous_part(int d) const {
  Polynomial p;
  for (const auto& [m, c] : terms_)
    if (m.a + m.b == d) p.terms_.emplace(m, c);
  return p;
}

void Polynomial::add_term(int a, int b, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(Monomial{a, b}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m.a, m.b, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m.a, m.b, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  Polynomial r;
  for (const auto& [m, c] : p.terms_)
    for (const auto& [n, d] : q.terms_) r.add_term(m.a + n.a, m.b + n.b, c * d);
  return r;
}

Polynomial operator-(Polynomial p) {
  for (auto& [m, c] : p.terms_) c = -c;
  return p;
}

Rational Polynomial::operator()(const Rational& x, const Rational& y) const {
  Rational s = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < m.a; ++i) t *= x;
    for (int i = 0; i < m.b; ++i) t *= y;
    s += t;
  }
  return s;
}

double Polynomial::evaluate(double x, double y) const {
  double s = 0.0;
  for (const auto& [m, c] : terms_) s += c.get_d() * std::pow(x, m.a) * std::pow(y, m.b);
  return s;
}

Polynomial Polynomial::dx() const {
  Polynomial r;
  for (const auto& [m, c] : terms_)
    if (m.a > 0) r.add_term(m.a - 1, m.b, c * m.a);
  return r;
}

Polynomial Polynomial::dy() const {
  Polynomial r;
  for (const auto& [m, c] : terms_)
    if (m.b > 0) r.add_term(m.a, m.b - 1, c * m.b);
  return r;
}

namespace {

// Binomial expansion of (x + s)^n as a univariate coefficient list.
std::vector<Rational> shifted_power(int n, const Rational& s) {
  std::vector<Rational> out(n + 1);
  Rational binom = 1;
  for (int i = 0; i <= n; ++i) {
    // coefficient of x^i is C(n,i) s^(n-i)
    Rational sp = 1;
    for (int j = 0; j < n - i; ++j) sp *= s;
    out[i] = binom * sp;
    binom = binom * (n - i) / (i + 1);
  }
  return out;
}

}  // namespace

Polynomial Polynomial::shifted(const Rational& sx, const Rational& sy) const {
  if (sx == 0 && sy == 0) return *this;
  Polynomial r;
  for (const auto& [m, c] : terms_) {
    auto px = shifted_power(m.a, sx);
    auto py = shifted_power(m.b, sy);
    for (int i = 0; i <= m.a; ++i)
      for (int j = 0; j <= m.b; ++j) r.add_term(i, j, c * px[i] * py[j]);
  }
  return r;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    first = false;
    Rational a = abs(c);
    bool unit = (a == 1) && (m.a + m.b > 0);
    if (!unit) os << a.get_str();
    auto factor = [&](const char* name, int e) {
      if (e == 0) return;
      if (!unit) os << "*";
      unit = false;
      os << name;
      if (e > 1) os << "^" << e;
    };
    factor("x1", m.a);
    factor("x2", m.b);
  }
  return os.str();
}

Polynomial pow(const Polynomial& p, int e) {
  Polynomial r = 1;
  for (int i = 0; i < e; ++i) r = r * p;
  return r;
}

Polynomial dot(const VectorField& u, const VectorField& v) { return u.c1 * v.c1 + u.c2 * v.c2; }

VectorField position_perp() { return {-Polynomial::x2(), Polynomial::x1()}; }

VectorField position() { return {Polynomial::x1(), Polynomial::x2()}; }

const char* to_string(Shape s) { return s == Shape::Triangle ? "tri" : "rect"; }

CellGeometry::CellGeometry(Shape s, std::vector<Point> v) : shape_(s), vertices_(std::move(v)) {
  if (signed_area() <= 0) throw InvalidArgument("degenerate or clockwise cell");
}

CellGeometry CellGeometry::triangle(Point a, Point b, Point c) { return {Shape::Triangle, {a, b, c}}; }

CellGeometry CellGeometry::rectangle(const Rational& xl, const Rational& xr, const Rational& yd,
                                     const Rational& yu) {
  if (!(xl < xr) || !(yd < yu)) throw InvalidArgument("degenerate rectangle");
  return {Shape::Rectangle, {{xl, yd}, {xr, yd}, {xr, yu}, {xl, yu}}};
}

CellGeometry CellGeometry::reference_triangle() { return triangle({0, 0}, {1, 0}, {0, 1}); }

CellGeometry CellGeometry::reference_rectangle() { return rectangle(-1, 1, -1, 1); }

std::pair<Point, Point> CellGeometry::edge(std::size_t i) const {
  return {vertices_.at(i), vertices_[(i + 1) % vertices_.size()]};
}

Point CellGeometry::edge_direction(std::size_t i) const {
  auto [a, b] = edge(i);
  return {b.x - a.x, b.y - a.y};
}

Rational CellGeometry::edge_length_squared(std::size_t i) const {
  Point d = edge_direction(i);
  return d.x * d.x + d.y * d.y;
}

Rational CellGeometry::signed_area() const {
  Rational s = 0;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = vertices_[i];
    const Point& q = vertices_[(i + 1) % n];
    s += p.x * q.y - q.x * p.y;
  }
  return s / 2;
}

Point CellGeometry::barycenter() const {
  Rational sx = 0, sy = 0;
  for (const auto& p : vertices_) {
    sx += p.x;
    sy += p.y;
  }
  const Rational n(static_cast<long>(vertices_.size()));
  return {sx / n, sy / n};
}

CellGeometry CellGeometry::translated(const Rational& dx, const Rational& dy) const {
  std::vector<Point> v = vertices_;
  for (auto& p : v) {
    p.x += dx;
    p.y += dy;
  }
  return {shape_, std::move(v)};
}

Polynomial CellGeometry::barycentric(std::size_t i) const {
  if (shape_ != Shape::Triangle) throw InvalidArgument("barycentric coordinates need a triangle");
  // lambda_i vanishes on the opposite edge (j, l) and equals 1 at vertex i.
  const Point& p = vertices_.at(i);
  const Point& q = vertices_[(i + 1) % 3];
  const Point& r = vertices_[(i + 2) % 3];
  // Line through q and r: (r.y - q.y)(x - q.x) - (r.x - q.x)(y - q.y).
  Polynomial line = (r.y - q.y) * (Polynomial::x1() - Polynomial(q.x)) -
                    (r.x - q.x) * (Polynomial::x2() - Polynomial(q.y));
  Rational at_p = line(p.x, p.y);
  return line * Rational(1 / at_p);
}

VectorField grad(const Polynomial& p) { return {p.dx(), p.dy()}; }

VectorField curl_scalar(const Polynomial& p) { return {p.dy(), -p.dx()}; }

Polynomial curl_vec(const VectorField& v) { return v.c2.dx() - v.c1.dy(); }

Polynomial div(const VectorField& v) { return v.c1.dx() + v.c2.dy(); }

VectorField poincare(const Polynomial& u) {
  Polynomial scaled;
  for (const auto& [m, c] : u.terms()) scaled.add_term(m.a, m.b, c / (m.a + m.b + 2));
  return scaled * position_perp();
}

VectorField koszul(const Polynomial& u) { return u * position_perp(); }

Univariate restrict_to_segment(const Polynomial& p, const Point& a, const Point& d) {
  const int deg = std::max(p.degree(), 0);
  // Powers of (a.x + t d.x) and (a.y + t d.y).
  std::vector<Univariate> px(deg + 1), py(deg + 1);
  px[0] = {Rational(1)};
  py[0] = {Rational(1)};
  const Univariate lx{a.x, d.x}, ly{a.y, d.y};
  for (int i = 1; i <= deg; ++i) {
    px[i] = multiply(px[i - 1], lx);
    py[i] = multiply(py[i - 1], ly);
  }
  Univariate out(deg + 1, Rational(0));
  for (const auto& [m, c] : p.terms()) {
    Univariate t = multiply(px[m.a], py[m.b]);
    for (std::size_t i = 0; i < t.size(); ++i) out[i] += c * t[i];
  }
  return out;
}

Univariate multiply(const Univariate& p, const Univariate& q) {
  if (p.empty() || q.empty()) return {};
  Univariate r(p.size() + q.size() - 1, Rational(0));
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  return r;
}

Rational integrate_unit_interval(const Univariate& p) {
  Rational s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] / Rational(static_cast<long>(i + 1));
  return s;
}

namespace {

Rational factorial(int n) {
  Rational f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// integral of x^a over [lo, hi]
Rational power_integral(int a, const Rational& lo, const Rational& hi) {
  Rational h = 1, l = 1;
  for (int i = 0; i <= a; ++i) {
    h *= hi;
    l *= lo;
  }
  return (h - l) / (a + 1);
}

}  // namespace

Rational integrate_cell(const Polynomial& p, const CellGeometry& cell) {
  if (cell.shape() == Shape::Rectangle) {
    Rational s = 0;
    for (const auto& [m, c] : p.terms())
      s += c * power_integral(m.a, cell.x_left(), cell.x_right()) *
           power_integral(m.b, cell.y_down(), cell.y_up());
    return s;
  }
  // Affine map from the unit simplex: x = v0 + s (v1 - v0) + t (v2 - v0).
  const auto& v = cell.vertices();
  const Rational e1x = v[1].x - v[0].x, e1y = v[1].y - v[0].y;
  const Rational e2x = v[2].x - v[0].x, e2y = v[2].y - v[0].y;
  const Rational jac = e1x * e2y - e1y * e2x;
  const int deg = std::max(p.degree(), 0);
  std::vector<Polynomial> px(deg + 1), py(deg + 1);
  px[0] = 1;
  py[0] = 1;
  const Polynomial lx = Polynomial(v[0].x) + e1x * Polynomial::x1() + e2x * Polynomial::x2();
  const Polynomial ly = Polynomial(v[0].y) + e1y * Polynomial::x1() + e2y * Polynomial::x2();
  for (int i = 1; i <= deg; ++i) {
    px[i] = px[i - 1] * lx;
    py[i] = py[i - 1] * ly;
  }
  Rational s = 0;
  for (const auto& [m, c] : p.terms()) {
    Polynomial q = px[m.a] * py[m.b];
    for (const auto& [n, d] : q.terms()) s += c * d * factorial(n.a) * factorial(n.b) / factorial(n.a + n.b + 2);
  }
  return s * abs(jac);
}

double EdgeIntegral::value() const { return factor.get_d() * std::sqrt(length_squared.get_d()); }

EdgeIntegral integrate_edge(const Polynomial& p, const CellGeometry& cell, std::size_t edge) {
  auto [a, b] = cell.edge(edge);
  Point d{b.x - a.x, b.y - a.y};
  return {integrate_unit_interval(restrict_to_segment(p, a, d)), cell.edge_length_squared(edge)};
}

Univariate legendre_on_unit_interval(int j) {
  // Bonnet recursion in xi, then substitute xi = 2t - 1.
  std::vector<Univariate> P(std::max(j, 1) + 1);
  P[0] = {Rational(1)};
  P[1] = {Rational(-1), Rational(2)};
  const Univariate xi{Rational(-1), Rational(2)};
  for (int n = 1; n < j; ++n) {
    Univariate a = multiply(xi, P[n]);
    Univariate r(a.size(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * fraction(2 * n + 1, n + 1);
    for (std::size_t i = 0; i < P[n - 1].size(); ++i) r[i] -= P[n - 1][i] * fraction(n, n + 1);
    P[n + 1] = r;
  }
  return P[j];
}

}  // namespace quadcurl
