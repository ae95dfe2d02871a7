#include "quadcurl/analysis.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

namespace quadcurl {

namespace manufactured {

double g(int n, double t) {
  const double pi = std::numbers::pi;
  const double shift = n * pi / 2.0;
  return (3.0 * std::pow(pi, n) * std::sin(pi * t + shift) - std::pow(3.0 * pi, n) * std::sin(3.0 * pi * t + shift)) /
         4.0;
}

ExactFields at(double x, double y) {
  double gx[6], gy[6];
  for (int n = 0; n < 6; ++n) {
    gx[n] = g(n, x);
    gy[n] = g(n, y);
  }
  ExactFields e{};
  e.u1 = gx[0] * gy[1];
  e.u2 = -gx[1] * gy[0];
  e.curl = -gx[2] * gy[0] - gx[0] * gy[2];
  e.cc1 = -gx[2] * gy[1] - gx[0] * gy[3];
  e.cc2 = gx[3] * gy[0] + gx[1] * gy[2];
  // f = curl(bilaplacian psi + psi)
  const double dy = gx[4] * gy[1] + 2.0 * gx[2] * gy[3] + gx[0] * gy[5] + gx[0] * gy[1];
  const double dx = gx[5] * gy[0] + 2.0 * gx[3] * gy[2] + gx[1] * gy[4] + gx[1] * gy[0];
  e.f1 = dy;
  e.f2 = -dx;
  return e;
}

}  // namespace manufactured

namespace {

struct CellValues {
  double u1, u2, curl, cc1, cc2;
};

CellValues discrete_at(const ElementTable& t, std::size_t q, const GlobalDofMap& map, std::size_t c,
                       const Eigen::VectorXd& x) {
  CellValues v{0, 0, 0, 0, 0};
  for (std::size_t i = 0; i < t.ndof; ++i) {
    const double a = map.sign(c, i) * x[map.index(c, i)];
    if (a == 0.0) continue;
    const double* p = t.phi_at(q, i);
    const double* cc = t.curlcurl_at(q, i);
    v.u1 += a * p[0];
    v.u2 += a * p[1];
    v.curl += a * t.curl_at(q, i);
    v.cc1 += a * cc[0];
    v.cc2 += a * cc[1];
  }
  return v;
}

}  // namespace

ErrorNorms error_norms(const Discretization& d, const Eigen::VectorXd& x, int quad_order) {
  return error_norms(d, x, manufactured::at, quad_order);
}

ErrorNorms error_norms(const Discretization& d, const Eigen::VectorXd& x, const FieldFn& exact, int quad_order) {
  const Mesh& mesh = d.mesh();
  std::vector<ElementTable> tables;
  for (int cls = 0; cls < mesh.num_classes; ++cls) tables.push_back(tabulate(d.element(cls), quad_order));
  double l2 = 0, cu = 0, c2 = 0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const ElementTable& t = tables[mesh.cells[c].congruence_class];
    const auto o = d.origin(c);
    for (std::size_t q = 0; q < t.nq(); ++q) {
      const CellValues h = discrete_at(t, q, d.dof_map(), c, x);
      const ExactFields e = exact(t.rule.x[q] + o[0], t.rule.y[q] + o[1]);
      const double w = t.rule.w[q];
      l2 += w * (std::pow(e.u1 - h.u1, 2) + std::pow(e.u2 - h.u2, 2));
      cu += w * std::pow(e.curl - h.curl, 2);
      c2 += w * (std::pow(e.cc1 - h.cc1, 2) + std::pow(e.cc2 - h.cc2, 2));
    }
  }
  return {std::sqrt(l2), std::sqrt(cu), std::sqrt(c2)};
}

DiscreteNorms discrete_norms(const Discretization& d, const Eigen::VectorXd& x, const FieldFn& exact,
                             int line_points) {
  const Mesh& mesh = d.mesh();
  if (mesh.shape != Shape::Rectangle) throw InvalidArgument("discrete norms need a rectangular mesh");
  const Rule1D g = gauss_legendre(line_points);
  double vn = 0, wn = 0;
  for (int cls = 0; cls < mesh.num_classes; ++cls) {
    const FiniteElement& el = d.element(cls);
    // Local frame origin is the cell center.
    const double hx = Rational(el.local_cell.x_right() - el.local_cell.x_left()).get_d() / 2.0;
    const double hy = Rational(el.local_cell.y_up() - el.local_cell.y_down()).get_d() / 2.0;
    QuadratureRule pts;
    for (std::size_t i = 0; i < g.t.size(); ++i) {  // vertical mid-line x = xc
      pts.x.push_back(0.0);
      pts.y.push_back(-hy + 2.0 * hy * g.t[i]);
      pts.w.push_back(2.0 * hy * g.w[i]);
    }
    for (std::size_t i = 0; i < g.t.size(); ++i) {  // horizontal mid-line y = yc
      pts.x.push_back(-hx + 2.0 * hx * g.t[i]);
      pts.y.push_back(0.0);
      pts.w.push_back(2.0 * hx * g.w[i]);
    }
    pts.x.push_back(0.0);
    pts.y.push_back(0.0);
    pts.w.push_back(1.0);
    const ElementTable t = tabulate(el, pts);
    const std::size_t nl = g.t.size();
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
      if (mesh.cells[c].congruence_class != cls) continue;
      const auto o = d.origin(c);
      for (std::size_t q = 0; q < t.nq(); ++q) {
        const CellValues h = discrete_at(t, q, d.dof_map(), c, x);
        const ExactFields e = exact(t.rule.x[q] + o[0], t.rule.y[q] + o[1]);
        if (q < nl)
          vn += 2.0 * hx * t.rule.w[q] * std::pow(e.u1 - h.u1, 2);
        else if (q < 2 * nl)
          vn += 2.0 * hy * t.rule.w[q] * std::pow(e.u2 - h.u2, 2);
        else
          wn += 4.0 * hx * hy * (std::pow(e.cc1 - h.cc1, 2) + std::pow(e.cc2 - h.cc2, 2));
      }
    }
  }
  return {std::sqrt(vn), std::sqrt(wn)};
}

double divergence_consistency(const Discretization& d, const Eigen::VectorXd& x, int quad_order) {
  const Mesh& mesh = d.mesh();
  std::vector<ScalarElement> sig;
  for (int cls = 0; cls < mesh.num_classes; ++cls)
    sig.push_back(sigma_element(sigma_degree(d.family(), d.k()), mesh.cell_geometry(mesh.representative(cls))));
  const GlobalDofMap smap(mesh, dof_layout(sig[0]));
  std::vector<ElementTable> tables;
  std::vector<std::vector<double>> grads;  // [cls][(q * ns + j) * 2]
  for (int cls = 0; cls < mesh.num_classes; ++cls) {
    tables.push_back(tabulate(d.element(cls), quad_order));
    const ElementTable& t = tables.back();
    const std::size_t ns = sig[cls].size();
    std::vector<double> gtab(t.nq() * ns * 2);
    for (std::size_t j = 0; j < ns; ++j) {
      const VectorField gj = grad(sig[cls].dual[j]);
      for (std::size_t q = 0; q < t.nq(); ++q) {
        gtab[(q * ns + j) * 2] = gj.c1.evaluate(t.rule.x[q], t.rule.y[q]);
        gtab[(q * ns + j) * 2 + 1] = gj.c2.evaluate(t.rule.x[q], t.rule.y[q]);
      }
    }
    grads.push_back(std::move(gtab));
  }
  std::vector<double> inner(smap.size(), 0.0), gnorm2(smap.size(), 0.0);
  double unorm2 = 0.0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const int cls = mesh.cells[c].congruence_class;
    const ElementTable& t = tables[cls];
    const std::size_t ns = sig[cls].size();
    for (std::size_t q = 0; q < t.nq(); ++q) {
      const CellValues h = discrete_at(t, q, d.dof_map(), c, x);
      const double w = t.rule.w[q];
      unorm2 += w * (h.u1 * h.u1 + h.u2 * h.u2);
      for (std::size_t j = 0; j < ns; ++j) {
        const double* gj = &grads[cls][(q * ns + j) * 2];
        const int J = smap.index(c, j);
        inner[J] += smap.sign(c, j) * w * (h.u1 * gj[0] + h.u2 * gj[1]);
        gnorm2[J] += w * (gj[0] * gj[0] + gj[1] * gj[1]);
      }
    }
  }
  double worst = 0.0;
  const double un = std::sqrt(unorm2);
  for (std::size_t J = 0; J < smap.size(); ++J) {
    if (smap.boundary()[J] || gnorm2[J] == 0.0) continue;
    worst = std::max(worst, std::abs(inner[J]) / (un * std::sqrt(gnorm2[J])));
  }
  return worst;
}

std::vector<double> convergence_rates(const std::vector<double>& e) {
  std::vector<double> r(e.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 1; i < e.size(); ++i) r[i] = std::log2(e[i - 1] / e[i]);
  return r;
}

void validate(const StudyConfig& c) {
  require_supported(c.family, c.k, c.shape);
  if (c.ns.empty()) throw InvalidArgument("no mesh sizes given");
  for (std::size_t i = 0; i < c.ns.size(); ++i) {
    if (c.ns[i] < 1) throw InvalidArgument("mesh sizes must be positive");
    if (i > 0 && c.ns[i] <= c.ns[i - 1]) throw InvalidArgument("mesh sizes must be strictly increasing");
  }
  if (c.quad_order < 1) throw InvalidArgument("quadrature order must be positive");
  if (!(c.solver.tolerance > 0.0)) throw InvalidArgument("solver tolerance must be positive");
}

std::vector<double> StudyResult::column(const std::string& name) const {
  std::vector<double> out;
  for (const auto& r : rows) {
    if (name == "l2") out.push_back(r.err.l2);
    else if (name == "curl") out.push_back(r.err.curl);
    else if (name == "curl2") out.push_back(r.err.curl2);
    else if (name == "v_norm") out.push_back(r.discrete ? r.discrete->v : std::nan(""));
    else if (name == "w_norm") out.push_back(r.discrete ? r.discrete->w : std::nan(""));
    else if (name == "h") out.push_back(r.h);
    else throw InvalidArgument("unknown column " + name);
  }
  return out;
}

StudyRow run_level(const StudyConfig& c, int n) {
  const auto t0 = std::chrono::steady_clock::now();
  Discretization d(uniform_mesh(c.shape, n), c.family, c.k);
  SparseSystem sys = assemble(
      d, [](double x, double y) { return manufactured::at(x, y).f1; },
      [](double x, double y) { return manufactured::at(x, y).f2; }, c.quad_order);
  apply_bc(sys);
  SolveResult sol = solve(sys, c.solver);
  StudyRow row;
  row.n = n;
  row.h = 1.0 / n;
  row.dofs = d.dof_map().size();
  row.residual = sol.relative_residual;
  row.err = error_norms(d, sol.x, c.quad_order);
  if (c.shape == Shape::Rectangle) row.discrete = discrete_norms(d, sol.x, manufactured::at);
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

StudyResult run_study(const StudyConfig& c, const ProgressFn& progress) {
  validate(c);
  StudyResult r;
  r.config = c;
  for (int n : c.ns) {
    try {
      r.rows.push_back(run_level(c, n));
    } catch (const SolverFailure& e) {
      throw SolverFailure("h = 1/" + std::to_string(n) + ": " + e.what(), e.residual());
    } catch (const ConfigError& e) {
      throw ConfigError("h = 1/" + std::to_string(n) + ": " + e.what());
    }
    if (progress) progress(r.rows.back());
  }
  return r;
}

namespace {

std::string sci(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string fixed4(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

std::string format_csv(const StudyResult& r) {
  const bool disc = r.config.shape == Shape::Rectangle;
  std::ostringstream os;
  os << "h,l2,l2_rate,curl,curl_rate,curl2,curl2_rate" << (disc ? ",v_norm,w_norm" : "") << '\n';
  const auto l2r = r.rates("l2"), cr = r.rates("curl"), c2r = r.rates("curl2");
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    os << sci(row.h) << ',' << sci(row.err.l2) << ',' << sci(l2r[i]) << ',' << sci(row.err.curl) << ','
       << sci(cr[i]) << ',' << sci(row.err.curl2) << ',' << sci(c2r[i]);
    if (disc) os << ',' << sci(row.discrete->v) << ',' << sci(row.discrete->w);
    os << '\n';
  }
  return os.str();
}

std::string format_markdown(const StudyResult& r) {
  const bool disc = r.config.shape == Shape::Rectangle;
  std::ostringstream os;
  os << "Family " << to_string(r.config.family) << ", " << to_string(r.config.shape) << ", k = " << r.config.k
     << "\n\n";
  os << "| h | ||e|| | rate | ||curl e|| | rate | ||curl^2 e|| | rate |";
  if (disc) os << " |||e|||_V | rate | |||curl^2 e|||_W | rate |";
  os << "\n|---|---|---|---|---|---|---|" << (disc ? "---|---|---|---|" : "") << '\n';
  const auto l2r = r.rates("l2"), cr = r.rates("curl"), c2r = r.rates("curl2");
  const auto vr = r.rates("v_norm"), wr = r.rates("w_norm");
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    os << "| 1/" << row.n << " | " << sci(row.err.l2) << " | " << fixed4(l2r[i]) << " | " << sci(row.err.curl)
       << " | " << fixed4(cr[i]) << " | " << sci(row.err.curl2) << " | " << fixed4(c2r[i]) << " |";
    if (disc)
      os << ' ' << sci(row.discrete->v) << " | " << fixed4(vr[i]) << " | " << sci(row.discrete->w) << " | "
         << fixed4(wr[i]) << " |";
    os << '\n';
  }
  return os.str();
}

}  // namespace quadcurl
