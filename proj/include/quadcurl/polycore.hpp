#pragma once

// Exact bivariate polynomial algebra over the rationals, together with the
// differential operators (grad, scalar and vector curl, div), the Poincare
// and Koszul operators, and exact integration over cells and edges.

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "quadcurl/errors.hpp"

namespace quadcurl {

using Rational = mpq_class;

/// num/den in canonical form (the two-argument mpq_class constructor does not reduce).
Rational fraction(long num, long den);

/// Exponent pair (a, b) of the monomial x1^a x2^b.
struct Monomial {
  int a = 0;
  int b = 0;
  auto operator<=>(const Monomial&) const = default;
};

class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational>;

  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT(google-explicit-constructor)
  Polynomial(int c);              // NOLINT(google-explicit-constructor)

  static Polynomial monomial(int a, int b, const Rational& c = 1);
  static Polynomial x1() { return monomial(1, 0); }
  static Polynomial x2() { return monomial(0, 1); }

  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  [[nodiscard]] int degree() const;
  /// Largest exponent of a single variable (the Q-degree); -1 for zero.
  [[nodiscard]] int partial_degree() const;
  [[nodiscard]] const TermMap& terms() const { return terms_; }
  [[nodiscard]] Rational coeff(int a, int b) const;
  [[nodiscard]] std::size_t num_terms() const { return terms_.size(); }

  /// Part of exact total degree d.
  [[nodiscard]] Polynomial homogeneous_part(int d) const;

  void add_term(int a, int b, const Rational& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
  friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator*(Polynomial p, const Rational& c) { return p *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial p) { return p *= c; }
  friend Polynomial operator-(Polynomial p);
  friend bool operator==(const Polynomial& p, const Polynomial& q) { return p.terms_ == q.terms_; }

  [[nodiscard]] Rational operator()(const Rational& x, const Rational& y) const;
  [[nodiscard]] double evaluate(double x, double y) const;

  [[nodiscard]] Polynomial dx() const;
  [[nodiscard]] Polynomial dy() const;

  /// Returns q with q(x) = p(x + shift).
  [[nodiscard]] Polynomial shifted(const Rational& sx, const Rational& sy) const;

  [[nodiscard]] std::string to_string() const;

 private:
  TermMap terms_;
};

Polynomial pow(const Polynomial& p, int e);

struct Point {
  Rational x;
  Rational y;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Vector field (u1, u2) with polynomial components.
struct VectorField {
  Polynomial c1;
  Polynomial c2;

  [[nodiscard]] bool is_zero() const { return c1.is_zero() && c2.is_zero(); }
  [[nodiscard]] int degree() const { return std::max(c1.degree(), c2.degree()); }

  VectorField& operator+=(const VectorField& o) {
    c1 += o.c1;
    c2 += o.c2;
    return *this;
  }
  VectorField& operator-=(const VectorField& o) {
    c1 -= o.c1;
    c2 -= o.c2;
    return *this;
  }
  friend VectorField operator+(VectorField u, const VectorField& v) { return u += v; }
  friend VectorField operator-(VectorField u, const VectorField& v) { return u -= v; }
  friend VectorField operator*(const Rational& c, const VectorField& u) { return {c * u.c1, c * u.c2}; }
  friend VectorField operator*(const Polynomial& p, const VectorField& u) { return {p * u.c1, p * u.c2}; }
  friend VectorField operator-(const VectorField& u) { return {-u.c1, -u.c2}; }
  friend bool operator==(const VectorField&, const VectorField&) = default;
};

Polynomial dot(const VectorField& u, const VectorField& v);
/// The rotated position field x_perp = (-x2, x1).
VectorField position_perp();
/// The position field x = (x1, x2).
VectorField position();

enum class Shape { Triangle, Rectangle };

const char* to_string(Shape s);

/// Triangle or axis-aligned rectangle with exact vertices in counterclockwise order.
class CellGeometry {
 public:
  /// The reference triangle.
  CellGeometry() : shape_(Shape::Triangle), vertices_{{0, 0}, {1, 0}, {0, 1}} {}
  static CellGeometry triangle(Point a, Point b, Point c);
  /// (xl, xr) x (yd, yu); vertices start at the lower-left corner.
  static CellGeometry rectangle(const Rational& xl, const Rational& xr, const Rational& yd, const Rational& yu);
  static CellGeometry reference_triangle();
  static CellGeometry reference_rectangle();

  [[nodiscard]] Shape shape() const { return shape_; }
  [[nodiscard]] const std::vector<Point>& vertices() const { return vertices_; }
  [[nodiscard]] std::size_t num_vertices() const { return vertices_.size(); }
  [[nodiscard]] std::size_t num_edges() const { return vertices_.size(); }
  /// Edge i runs from vertex i to vertex (i + 1) mod n.
  [[nodiscard]] std::pair<Point, Point> edge(std::size_t i) const;
  /// Unnormalized edge direction b - a; the unit tangent is direction / |e|.
  [[nodiscard]] Point edge_direction(std::size_t i) const;
  [[nodiscard]] Rational edge_length_squared(std::size_t i) const;
  [[nodiscard]] Rational signed_area() const;
  [[nodiscard]] Point barycenter() const;
  [[nodiscard]] CellGeometry translated(const Rational& dx, const Rational& dy) const;

  /// Barycentric coordinate of vertex i as an affine polynomial (triangles only).
  [[nodiscard]] Polynomial barycentric(std::size_t i) const;

  // Rectangle bounds.
  [[nodiscard]] Rational x_left() const { return vertices_[0].x; }
  [[nodiscard]] Rational x_right() const { return vertices_[2].x; }
  [[nodiscard]] Rational y_down() const { return vertices_[0].y; }
  [[nodiscard]] Rational y_up() const { return vertices_[2].y; }

 private:
  CellGeometry(Shape s, std::vector<Point> v);
  Shape shape_;
  std::vector<Point> vertices_;
};

// Differential operators.
VectorField grad(const Polynomial& p);
/// Vector curl of a scalar: (d2 p, -d1 p).
VectorField curl_scalar(const Polynomial& p);
/// Scalar curl of a field: d1 u2 - d2 u1.
Polynomial curl_vec(const VectorField& v);
Polynomial div(const VectorField& v);

/// Poincare operator about the coordinate origin: integral_0^1 t x_perp u(t x) dt.
VectorField poincare(const Polynomial& u);
/// Koszul operator u x_perp.
VectorField koszul(const Polynomial& u);

/// Univariate polynomial in the edge parameter t, coefficients by ascending power.
using Univariate = std::vector<Rational>;

/// p(a + t d) as a polynomial in t.
Univariate restrict_to_segment(const Polynomial& p, const Point& a, const Point& d);
Univariate multiply(const Univariate& p, const Univariate& q);
Rational integrate_unit_interval(const Univariate& p);

/// Exact integral over the cell; p is expressed in the same coordinates as the cell vertices.
Rational integrate_cell(const Polynomial& p, const CellGeometry& cell);

/// Edge integral stored as factor * sqrt(length_squared).
struct EdgeIntegral {
  Rational factor;
  Rational length_squared;
  [[nodiscard]] double value() const;
};

EdgeIntegral integrate_edge(const Polynomial& p, const CellGeometry& cell, std::size_t edge);

/// Legendre polynomial of degree j on [-1, 1] composed with xi = 2t - 1.
Univariate legendre_on_unit_interval(int j);

}  // namespace quadcurl
