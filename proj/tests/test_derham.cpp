#include <gtest/gtest.h>

#include <cmath>

#include "quadcurl/checks.hpp"
#include "quadcurl/derham.hpp"
#include "quadcurl/quadrature.hpp"

using namespace quadcurl;

TEST(Derham, LocalDimensions) {
  const ExactnessReport r = check_local(Family::New, 2, CellGeometry::reference_triangle());
  EXPECT_EQ(r.dim_sigma, 3u);
  EXPECT_EQ(r.dim_v, 6u);
  EXPECT_EQ(r.dim_w, 4u);
  EXPECT_TRUE(r.passed) << r.message;
  EXPECT_EQ(check_local(Family::Mid, 3, CellGeometry::reference_triangle()).dim_v, 16u);
}

TEST(Derham, GlobalDimensions) {
  const ExactnessReport t = check_global(uniform_tri_mesh(1), Family::New, 2);
  EXPECT_EQ(t.dim_v, 9u);
  EXPECT_EQ(t.dim_sigma, 4u);
  EXPECT_EQ(t.dim_w, 6u);
  const ExactnessReport r = check_global(uniform_rect_mesh(2), Family::New, 2);
  EXPECT_EQ(r.dim_v, 21u);
  EXPECT_EQ(r.dim_sigma, 9u);
  EXPECT_EQ(r.dim_w, 13u);
}

TEST(Derham, ExactOnEveryCombination) {
  for (const Combination& c : supported_combinations()) {
    const CellGeometry ref = c.shape == Shape::Triangle ? CellGeometry::reference_triangle()
                                                        : CellGeometry::reference_rectangle();
    const ExactnessReport l = check_local(c.family, c.k, ref);
    EXPECT_TRUE(l.passed) << describe(c.family, c.k, c.shape) << ": " << l.message;
    const ExactnessReport g = check_global(uniform_mesh(c.shape, 2), c.family, c.k);
    EXPECT_TRUE(g.passed) << describe(c.family, c.k, c.shape) << ": " << g.message;
    EXPECT_EQ(g.dim_v + 1, g.dim_sigma + g.dim_w);
    EXPECT_EQ(g.rank_curl, g.dim_w);
    EXPECT_EQ(g.rank_grad + 1, g.dim_sigma);
    EXPECT_TRUE(g.conforming);
  }
}

TEST(Derham, CommutingOnCoarseMesh) {
  const CommutingReport r = check_commuting_global(uniform_tri_mesh(2), Family::New, 2, 5, 3);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.samples, 5);
  EXPECT_EQ(r.grad_failures + r.curl_failures, 0);
  const CommutingReport q = check_commuting_global(uniform_rect_mesh(2), Family::Mid, 3, 3, 4);
  EXPECT_TRUE(q.passed);
}

TEST(Derham, ReportsRenderRecords) {
  const ExactnessReport r = check_local(Family::High, 2, CellGeometry::reference_rectangle());
  bool has_dim = false;
  for (const auto& [k, v] : r.records()) has_dim = has_dim || (k == "dim_v" && v == "20");
  EXPECT_TRUE(has_dim);
  EXPECT_FALSE(r.text().empty());
}

// Interpolation of a smooth field on shrinking cells: the L2 error scaled by
// |K|^-1/2 decays at least like h^r since V contains vector P_{r-1}.
TEST(Derham, InterpolationErrorDecays) {
  auto u1 = [](double x, double y) { return std::sin(x + 2 * y); };
  auto u2 = [](double x, double y) { return std::cos(x * y); };
  auto cu = [](double x, double y) { return -y * std::sin(x * y) - 2 * std::cos(x + 2 * y); };
  for (const Combination& c : supported_combinations()) {
    const int r = sigma_degree(c.family, c.k);
    std::vector<double> errs;
    for (int m : {8, 16}) {
      const Rational h = fraction(1, m), x0 = fraction(3, 10), y0 = fraction(1, 5);
      const CellGeometry cell = c.shape == Shape::Triangle
                                    ? CellGeometry::triangle({x0, y0}, {x0 + h, y0}, {x0, y0 + h})
                                    : CellGeometry::rectangle(x0, x0 + h, y0, y0 + h);
      const FiniteElement el = make_element(c.family, c.k, cell);
      const std::vector<double> dofs = dof_values_numeric(el, u1, u2, cu);
      const double ox = el.frame().origin.x.get_d(), oy = el.frame().origin.y.get_d();
      const QuadratureRule q = cell_rule(cell, 14);
      double e2 = 0, area = 0;
      for (std::size_t p = 0; p < q.size(); ++p) {
        double v1 = 0, v2 = 0;
        for (std::size_t i = 0; i < el.size(); ++i) {
          v1 += dofs[i] * el.dual[i].c1.evaluate(q.x[p] - ox, q.y[p] - oy);
          v2 += dofs[i] * el.dual[i].c2.evaluate(q.x[p] - ox, q.y[p] - oy);
        }
        const double d1 = u1(q.x[p], q.y[p]) - v1, d2 = u2(q.x[p], q.y[p]) - v2;
        e2 += q.w[p] * (d1 * d1 + d2 * d2);
        area += q.w[p];
      }
      errs.push_back(std::sqrt(e2 / area));
    }
    EXPECT_GT(std::log2(errs[0] / errs[1]), r - 0.3) << describe(c.family, c.k, c.shape);
  }
}
