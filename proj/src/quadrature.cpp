#include "quadcurl/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace quadcurl {

namespace {

Rule1D compute_gauss(int n) {
  // Newton iteration on P_n over [-1, 1], then mapped to [0, 1].
  Rule1D r;
  r.t.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int m = 2; m <= n; ++m) {
        const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int m = 2; m <= n; ++m) {
      const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    r.t[n - 1 - i] = 0.5 * (x + 1.0);
    r.w[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);  // 2/((1-x^2)P'^2) scaled by 1/2
  }
  return r;
}

}  // namespace

Rule1D gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("Gauss rule needs at least one point");
  static std::mutex mu;
  static std::map<int, Rule1D> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss(n)).first;
  return it->second;
}

int points_for_order(Shape shape, int order) {
  order = std::max(order, 0);
  return shape == Shape::Triangle ? (order + 3) / 2 : (order + 2) / 2;
}

QuadratureRule cell_rule(const CellGeometry& cell, int order) {
  const int n = points_for_order(cell.shape(), order);
  const Rule1D g = gauss_legendre(n);
  QuadratureRule q;
  const auto& v = cell.vertices();
  if (cell.shape() == Shape::Rectangle) {
    const double xl = cell.x_left().get_d(), xr = cell.x_right().get_d();
    const double yd = cell.y_down().get_d(), yu = cell.y_up().get_d();
    const double area = (xr - xl) * (yu - yd);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        q.x.push_back(xl + (xr - xl) * g.t[i]);
        q.y.push_back(yd + (yu - yd) * g.t[j]);
        q.w.push_back(area * g.w[i] * g.w[j]);
      }
    return q;
  }
  const double x0 = v[0].x.get_d(), y0 = v[0].y.get_d();
  const double e1x = v[1].x.get_d() - x0, e1y = v[1].y.get_d() - y0;
  const double e2x = v[2].x.get_d() - x0, e2y = v[2].y.get_d() - y0;
  const double jac = std::abs(e1x * e2y - e1y * e2x);
  // Collapsed map (u, s) -> (u, s (1 - u)) onto the unit simplex.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double a = g.t[i];
      const double b = g.t[j] * (1.0 - a);
      q.x.push_back(x0 + a * e1x + b * e2x);
      q.y.push_back(y0 + a * e1y + b * e2y);
      q.w.push_back(jac * g.w[i] * g.w[j] * (1.0 - a));
    }
  return q;
}

}  // namespace quadcurl
