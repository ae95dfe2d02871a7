#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "quadcurl/solver.hpp"

using namespace quadcurl;

namespace {

double zero_fn(double, double) { return 0.0; }

SparseSystem random_spd(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  Eigen::MatrixXd b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = u(rng);
  const Eigen::MatrixXd a = b.transpose() * b + Eigen::MatrixXd::Identity(n, n);
  SparseSystem s;
  s.A = a.sparseView();
  s.b = Eigen::VectorXd::NullaryExpr(n, [&] { return u(rng); });
  s.boundary.assign(n, false);
  return s;
}

}  // namespace

// On a single cell the assembled matrix must equal the exactly integrated
// element matrix up to the orientation signs.
TEST(Assembly, OneCellMatchesExactElementMatrix) {
  for (int k : {2, 3}) {
    const Discretization d(uniform_rect_mesh(1), Family::High, k);
    const SparseSystem s = assemble(d, zero_fn, zero_fn, 12);
    const FiniteElement& el = d.element(0);
    const GlobalDofMap& map = d.dof_map();
    const double scale = Eigen::MatrixXd(s.A).cwiseAbs().maxCoeff();
    for (std::size_t i = 0; i < el.size(); ++i)
      for (std::size_t j = 0; j < el.size(); ++j) {
        const VectorField ci = curl_scalar(curl_vec(el.dual[i])), cj = curl_scalar(curl_vec(el.dual[j]));
        const Rational exact = integrate_cell(ci.c1 * cj.c1 + ci.c2 * cj.c2, el.local_cell) +
                               integrate_cell(el.dual[i].c1 * el.dual[j].c1 + el.dual[i].c2 * el.dual[j].c2,
                                              el.local_cell);
        const double got = s.A.coeff(map.index(0, i), map.index(0, j)) * map.sign(0, i) * map.sign(0, j);
        EXPECT_NEAR(got, exact.get_d(), 1e-13 * scale);
      }
  }
}

// The quadrature order demanded by stiffness_degree integrates the element matrix exactly.
TEST(Assembly, QuadratureAtStiffnessDegreeReproducesElementMatrix) {
  for (Shape shape : {Shape::Triangle, Shape::Rectangle}) {
    const FiniteElement el = make_element(Family::Mid, 3, uniform_mesh(shape, 4).cell_geometry(0));
    const Eigen::MatrixXd exact = element_matrix(el);
    const ElementTable t = tabulate(el, stiffness_degree(el));
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(t.ndof, t.ndof);
    for (std::size_t p = 0; p < t.nq(); ++p)
      for (std::size_t i = 0; i < t.ndof; ++i)
        for (std::size_t j = 0; j < t.ndof; ++j) {
          const double *pi = t.phi_at(p, i), *pj = t.phi_at(p, j);
          const double *ci = t.curlcurl_at(p, i), *cj = t.curlcurl_at(p, j);
          q(i, j) += t.rule.w[p] * (ci[0] * cj[0] + ci[1] * cj[1] + pi[0] * pj[0] + pi[1] * pj[1]);
        }
    EXPECT_LT((q - exact).cwiseAbs().maxCoeff(), 1e-9 * exact.cwiseAbs().maxCoeff());
  }
}

TEST(Assembly, SmallMeshMatrixIsSpd) {
  for (Shape shape : {Shape::Rectangle, Shape::Triangle}) {
    const Discretization d(uniform_mesh(shape, 1), Family::New, 2);
    const SparseSystem s = assemble(d, zero_fn, zero_fn, 12);
    Eigen::MatrixXd a(s.A);
    EXPECT_TRUE(a.isApprox(a.transpose(), 1e-14));
    EXPECT_GT(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues().minCoeff(), 0.0);
    EXPECT_EQ(s.b.norm(), 0.0);
  }
}

TEST(Assembly, SymmetricAndChecksQuadratureOrder) {
  const Discretization d(uniform_tri_mesh(3), Family::Mid, 3);
  const SparseSystem s = assemble(d, [](double x, double) { return x; }, [](double, double y) { return y * y; }, 12);
  const Eigen::SparseMatrix<double> t = s.A.transpose();
  EXPECT_NEAR((s.A - t).norm(), 0.0, 1e-12 * s.A.norm());
  EXPECT_GT(s.b.norm(), 0.0);
  EXPECT_THROW(assemble(d, zero_fn, zero_fn, 2), ConfigError);
  EXPECT_EQ(stiffness_degree(d.element(0)), 2 * (sigma_degree(Family::Mid, 3) + 1));
}

TEST(Assembly, BoundaryRowsBecomeIdentity) {
  const Discretization d(uniform_rect_mesh(2), Family::New, 2);
  SparseSystem s = assemble(d, [](double, double) { return 1.0; }, zero_fn, 12);
  apply_bc(s);
  for (Eigen::Index i = 0; i < s.A.rows(); ++i) {
    if (!s.boundary[i]) continue;
    EXPECT_EQ(s.b[i], 0.0);
    for (Eigen::Index j = 0; j < s.A.cols(); ++j) {
      EXPECT_EQ(s.A.coeff(i, j), i == j ? 1.0 : 0.0);
      EXPECT_EQ(s.A.coeff(j, i), i == j ? 1.0 : 0.0);
    }
  }
}

TEST(Solve, ZeroLoadGivesZero) {
  Discretization d(uniform_tri_mesh(2), Family::New, 2);
  SparseSystem s = assemble(d, zero_fn, zero_fn, 12);
  apply_bc(s);
  const SolveResult r = solve(s, {});
  EXPECT_EQ(r.x.norm(), 0.0);
}

TEST(Solve, IdentitySystem) {
  SparseSystem s;
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(5, 5);
  s.A = id.sparseView();
  s.b = Eigen::VectorXd::LinSpaced(5, 1, 5);
  s.boundary.assign(5, false);
  for (SolverMethod m : {SolverMethod::Direct, SolverMethod::CG}) {
    SolverOptions o;
    o.method = m;
    const SolveResult r = solve(s, o);
    EXPECT_LT((r.x - s.b).norm(), 1e-14);
  }
}

TEST(Solve, RandomSpdBothMethods) {
  const SparseSystem s = random_spd(50, 9);
  for (SolverMethod m : {SolverMethod::Direct, SolverMethod::CG}) {
    SolverOptions o;
    o.method = m;
    const SolveResult r = solve(s, o);
    EXPECT_LE(r.relative_residual, 1e-10);
    EXPECT_LE(relative_residual(s.A, r.x, s.b), 1e-10);
    const Eigen::VectorXd ref = Eigen::MatrixXd(s.A).llt().solve(s.b);
    EXPECT_LT((r.x - ref).norm(), 1e-8 * ref.norm());
  }
}

TEST(Solve, FailsOnIndefiniteMatrix) {
  SparseSystem s;
  Eigen::MatrixXd a(2, 2);
  a << 1, 0, 0, -1;
  s.A = a.sparseView();
  s.b = Eigen::VectorXd::Ones(2);
  s.boundary.assign(2, false);
  EXPECT_THROW(solve(s, {}), SolverFailure);
}

TEST(Solve, WriteMatrixCoordinateFormat) {
  SparseSystem s = random_spd(3, 2);
  std::ostringstream os;
  write_matrix(os, s.A);
  std::istringstream is(os.str());
  int i, j, lines = 0;
  double v;
  while (is >> i >> j >> v) {
    EXPECT_DOUBLE_EQ(v, s.A.coeff(i, j));
    ++lines;
  }
  EXPECT_EQ(lines, 9);
}
