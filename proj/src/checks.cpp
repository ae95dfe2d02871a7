#include "quadcurl/checks.hpp"

#include <sstream>

namespace quadcurl {

std::vector<Combination> supported_combinations() {
  std::vector<Combination> out;
  for (Family f : {Family::New, Family::Mid, Family::High}) {
    for (int k = 2; k <= 4; ++k) out.push_back({f, k, Shape::Triangle});
    for (int k = 2; k <= 3; ++k) out.push_back({f, k, Shape::Rectangle});
  }
  return out;
}

CellGeometry random_cell(Shape s, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-12, 12), den(1, 6), len(1, 10);
  auto r = [&] { return fraction(num(rng), den(rng)); };
  if (s == Shape::Rectangle) {
    const Rational xl = r(), yd = r();
    return CellGeometry::rectangle(xl, Rational(xl + fraction(len(rng), den(rng))), yd,
                                   Rational(yd + fraction(len(rng), den(rng))));
  }
  for (;;) {
    Point a{r(), r()}, b{r(), r()}, c{r(), r()};
    const Rational area = ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y)) / 2;
    if (area == 0) continue;
    return area > 0 ? CellGeometry::triangle(a, b, c) : CellGeometry::triangle(a, c, b);
  }
}

void CheckReport::merge(const CheckReport& o) {
  passed = passed && o.passed;
  records.insert(records.end(), o.records.begin(), o.records.end());
  text += o.text;
}

namespace {

std::string yes(bool b) { return b ? "yes" : "no"; }

std::string cell_string(const CellGeometry& c) {
  std::ostringstream os;
  for (std::size_t i = 0; i < c.num_vertices(); ++i)
    os << (i ? " " : "") << '(' << c.vertices()[i].x << ',' << c.vertices()[i].y << ')';
  return os.str();
}

}  // namespace

CheckReport check_unisolvence(const Combination& c, int random_cells, unsigned seed) {
  CheckReport rep;
  rep.name = "unisolvence";
  const std::string tag = describe(c.family, c.k, c.shape);
  std::mt19937 rng(seed);
  std::vector<CellGeometry> cells{c.shape == Shape::Triangle ? CellGeometry::reference_triangle()
                                                             : CellGeometry::reference_rectangle()};
  for (int i = 0; i < random_cells; ++i) cells.push_back(random_cell(c.shape, rng));
  int failures = 0;
  std::size_t dim = 0;
  std::ostringstream os;
  for (const auto& cell : cells) {
    try {
      const FiniteElement el = make_element(c.family, c.k, cell);
      dim = el.size();
      if (!dof_matrix(el.dofs, el.local_cell, el.dual).is_identity()) {
        ++failures;
        os << "  dual basis not biorthogonal on " << cell_string(cell) << '\n';
      }
    } catch (const UnisolvenceFailure& e) {
      ++failures;
      os << "  singular on " << cell_string(cell) << ": " << e.what() << '\n';
    }
  }
  rep.passed = failures == 0;
  rep.records = {{"check", "unisolvence"},
                 {"element", tag},
                 {"cells", std::to_string(cells.size())},
                 {"dofs", std::to_string(dim)},
                 {"failures", std::to_string(failures)}};
  rep.text = "unisolvence " + tag + ": " + std::to_string(cells.size()) + " cells, " + std::to_string(dim) +
             " dofs, " + (rep.passed ? "ok" : std::to_string(failures) + " failures") + '\n' + os.str();
  return rep;
}

CheckReport check_exactness_on(const Combination& c, int n) {
  const ExactnessReport g = check_global(uniform_mesh(c.shape, n), c.family, c.k);
  return {"exactness", g.passed, g.records(), g.text()};
}

CheckReport check_exactness(const Combination& c, int max_n) {
  const ExactnessReport l = check_local(
      c.family, c.k,
      c.shape == Shape::Triangle ? CellGeometry::reference_triangle() : CellGeometry::reference_rectangle());
  CheckReport rep{"exactness", l.passed, l.records(), l.text()};
  for (int n = 1; n <= max_n; ++n) rep.merge(check_exactness_on(c, n));
  return rep;
}

CheckReport check_commuting(const Combination& c, int n, int samples, unsigned seed) {
  const CommutingReport r = check_commuting_global(uniform_mesh(c.shape, n), c.family, c.k, samples, seed);
  return {"commuting", r.passed, r.records(), r.text()};
}

std::vector<VectorField> published_basis(Shape s) {
  const Polynomial x = Polynomial::x1(), y = Polynomial::x2();
  auto n = [](long v) { return Polynomial(Rational(v)); };
  std::vector<VectorField> out;
  if (s == Shape::Rectangle) {
    const Rational q = fraction(1, 32);
    const Polynomial y2m = y * y - n(1), x2m = x * x - n(1);
    const Polynomial xx = x * x, yy = y * y;
    const std::vector<Polynomial> c1{
        -q * (y2m * (n(-3) * y * xx + n(2) * x + n(5) * y - n(4))),
        q * (y2m * (n(3) * y * xx + n(2) * x - n(5) * y + n(4))),
        q * (y2m * (n(3) * y * xx + n(2) * x - n(5) * y - n(4))),
        -q * (y2m * (n(-3) * y * xx + n(2) * x + n(5) * y + n(4))),
        -q * ((y - n(1)) * (n(3) * xx * yy + n(3) * xx * y - n(5) * yy - n(5) * y + n(8))),
        q * ((y + n(1)) * (n(3) * xx * yy - n(3) * xx * y - n(5) * yy + n(5) * y + n(8))),
        q * (y * y2m * (n(3) * xx - n(5))),
        -q * (y * y2m * (n(3) * xx - n(5))),
    };
    const std::vector<Polynomial> c2{
        q * (x2m * (n(-3) * x * yy + n(2) * y + n(5) * x - n(4))),
        q * (x2m * (n(-3) * x * yy - n(2) * y + n(5) * x + n(4))),
        -q * (x2m * (n(3) * x * yy + n(2) * y - n(5) * x + n(4))),
        q * (x2m * (n(-3) * x * yy + n(2) * y + n(5) * x + n(4))),
        q * (x * x2m * (n(3) * yy - n(5))),
        -q * (x * x2m * (n(3) * yy - n(5))),
        -q * ((x - n(1)) * (n(3) * xx * yy - n(5) * xx + n(3) * x * yy - n(5) * x + n(8))),
        q * ((x + n(1)) * (n(3) * xx * yy - n(5) * xx - n(3) * x * yy + n(5) * x + n(8))),
    };
    for (std::size_t i = 0; i < c1.size(); ++i) out.push_back({c1[i], c2[i]});
    return out;
  }
  const Rational half = fraction(1, 2);
  const Polynomial l = x + y - n(1);
  const Polynomial a = y * (n(3) * x - n(4) * x * y) * l;
  const Polynomial b = x * (x + n(4) * x * y) * l;
  const Polynomial s1 = -y * (x + y) - n(3) * x * y - n(6) * a;
  const Polynomial s2 = x * (x + y) - n(3) * x * y - n(6) * b;
  const std::vector<Polynomial> c1{
      half * (y * (x + y)) - half * y + half * (x * y) + a,
      -x * y * (n(4) * y - n(3)) * l,
      x * y + a,
      s1,
      s1,
      n(1) - n(3) * x * y - n(6) * a - y * (x + y),
  };
  const std::vector<Polynomial> c2{
      half * (x * (n(8) * x * x * y + n(2) * x * x + n(8) * x * y * y - n(6) * x * y - n(3) * x + n(1))),
      x * x * (n(4) * y + n(1)) * l,
      x * y + b,
      s2,
      s2 - n(1),
      s2,
  };
  for (std::size_t i = 0; i < c1.size(); ++i) out.push_back({c1[i], c2[i]});
  return out;
}

namespace {

/// Every row and column holds exactly one entry, equal to +-1.
bool is_signed_permutation(const RationalMatrix& m) {
  if (m.rows() != m.cols()) return false;
  std::vector<int> col_count(m.cols(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    int row_count = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational& v = m(i, j);
      if (v == 0) continue;
      if (v != 1 && v != -1) return false;
      ++row_count;
      ++col_count[j];
    }
    if (row_count != 1) return false;
  }
  for (int c : col_count)
    if (c != 1) return false;
  return true;
}

}  // namespace

CheckReport check_appendix(Shape s) {
  const CellGeometry cell =
      s == Shape::Triangle ? CellGeometry::reference_triangle() : CellGeometry::reference_rectangle();
  const FiniteElement el = make_element(Family::New, 2, cell);
  const std::vector<VectorField> pub = published_basis(s);

  // Signed-permutation match against our dual basis.
  std::vector<bool> used(el.size(), false);
  std::size_t matched = 0;
  std::ostringstream os;
  for (std::size_t i = 0; i < pub.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < el.size() && !found; ++j) {
      if (used[j]) continue;
      if (pub[i] == el.dual[j] || pub[i] == -el.dual[j]) {
        used[j] = true;
        found = true;
        os << "  published " << i << " = " << (pub[i] == el.dual[j] ? "+" : "-") << "dual " << j << '\n';
      }
    }
    if (found) ++matched;
    else os << "  published " << i << " has no signed match\n";
  }
  const bool match = pub.size() == el.size() && matched == pub.size();
  const bool biorthogonal = is_signed_permutation(dof_matrix(el.dofs, el.local_cell, pub));
  const bool in_space = spans(el.space.members, pub);

  CheckReport rep;
  rep.name = "appendix";
  rep.passed = match;
  const std::string tag = describe(Family::New, 2, s);
  rep.records = {{"check", "appendix"},
                 {"element", tag},
                 {"published", std::to_string(pub.size())},
                 {"dofs", std::to_string(el.size())},
                 {"signed_matches", std::to_string(matched)},
                 {"dof_matrix_signed_permutation", yes(biorthogonal)},
                 {"published_in_v", yes(in_space)}};
  rep.text = "appendix " + tag + ": " + std::to_string(matched) + "/" + std::to_string(pub.size()) +
             " signed matches, DOF matrix signed permutation: " + yes(biorthogonal) +
             ", published fields in V: " + yes(in_space) + (match ? ", ok" : ", MISMATCH") + '\n' + os.str();
  return rep;
}

}  // namespace quadcurl
