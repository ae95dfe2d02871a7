#include "quadcurl/derham.hpp"

#include <random>
#include <sstream>

#include "quadcurl/dofmap.hpp"

namespace quadcurl {

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string header(const char* level, Family f, int k, Shape s, int n) {
  std::ostringstream os;
  os << level << ' ' << describe(f, k, s);
  if (n > 0) os << " n=" << n;
  return os.str();
}

}  // namespace

std::vector<Record> ExactnessReport::records() const {
  return {{"level", level},
          {"family", to_string(family)},
          {"k", std::to_string(k)},
          {"shape", to_string(shape)},
          {"n", std::to_string(n)},
          {"dim_sigma", std::to_string(dim_sigma)},
          {"dim_v", std::to_string(dim_v)},
          {"dim_w", std::to_string(dim_w)},
          {"rank_grad", std::to_string(rank_grad)},
          {"rank_curl", std::to_string(rank_curl)},
          {"grad_in_v", yes_no(grad_in_v)},
          {"complex", yes_no(complex)},
          {"curl_onto_w", yes_no(curl_onto_w)},
          {"kernel_is_grad", yes_no(kernel_is_grad)},
          {"conforming", yes_no(conforming)},
          {"verdict", passed ? "exact" : "not exact"}};
}

std::string ExactnessReport::text() const {
  std::ostringstream os;
  os << header(level.c_str(), family, k, shape, n) << ": " << (passed ? "exact" : "NOT exact") << '\n';
  os << "  dims (Sigma, V, W) = (" << dim_sigma << ", " << dim_v << ", " << dim_w << ")\n";
  os << "  rank grad = " << rank_grad << ", rank curl = " << rank_curl << '\n';
  if (!message.empty()) os << "  " << message << '\n';
  return os.str();
}

ExactnessReport check_local(Family f, int k, const CellGeometry& cell) {
  ExactnessReport rep;
  rep.level = "local";
  rep.family = f;
  rep.k = k;
  rep.shape = cell.shape();
  const LocalFrame frame = LocalFrame::standard(cell);
  const ScalarSpace sigma = sigma_space(sigma_degree(f, k), frame);
  const ScalarSpace w = w_space(k, frame);
  const VectorSpace v = v_space(sigma_degree(f, k), k, frame);
  rep.dim_sigma = sigma.members.size();
  rep.dim_w = w.members.size();
  rep.dim_v = v.members.size();

  std::vector<VectorField> grads;
  for (const auto& p : sigma.members) grads.push_back(grad(p));
  rep.rank_grad = rank(coefficient_matrix(grads));
  rep.grad_in_v = spans(v.members, grads);

  std::vector<Polynomial> curls;
  for (const auto& m : v.members) curls.push_back(curl_vec(m));
  rep.rank_curl = rank(coefficient_matrix(curls));
  rep.curl_onto_w = spans(w.members, curls) && spans(curls, w.members) && rep.rank_curl == rep.dim_w;
  rep.complex = true;
  for (const auto& g : grads) rep.complex = rep.complex && curl_vec(g).is_zero();
  // ker curl has dimension dim V - rank curl; with grad Sigma inside it and of
  // the same dimension, the two coincide.
  rep.kernel_is_grad = rep.grad_in_v && rep.dim_v - rep.rank_curl == rep.rank_grad;
  rep.passed = rep.rank_grad == rep.dim_sigma - 1 && rep.grad_in_v && rep.curl_onto_w && rep.kernel_is_grad &&
               rep.complex && rep.dim_v == rep.dim_sigma - 1 + rep.dim_w;
  return rep;
}

namespace {

// Sparse rational matrix stored by rows, filled by assignment with a
// consistency check for entries set from more than one cell.
struct AssemblyMatrix {
  std::vector<SparseRow> rows;
  bool consistent = true;

  explicit AssemblyMatrix(std::size_t n) : rows(n) {}

  void put(std::size_t i, std::size_t j, const Rational& v) {
    auto [it, inserted] = rows[i].try_emplace(j, v);
    if (!inserted && it->second != v) consistent = false;
  }
};

struct ElementCache {
  std::vector<FiniteElement> v;
  std::vector<ScalarElement> sigma, w;
};

ElementCache build_cache(const Mesh& mesh, Family f, int k) {
  ElementCache c;
  for (int cls = 0; cls < mesh.num_classes; ++cls) {
    const CellGeometry g = mesh.cell_geometry(mesh.representative(cls));
    c.v.push_back(make_element(f, k, g));
    c.sigma.push_back(sigma_element(sigma_degree(f, k), g));
    c.w.push_back(w_element(k, g));
  }
  return c;
}

}  // namespace

ExactnessReport check_global(const Mesh& mesh, Family f, int k) {
  ExactnessReport rep;
  rep.level = "global";
  rep.family = f;
  rep.k = k;
  rep.shape = mesh.shape;
  rep.n = mesh.n;
  require_supported(f, k, mesh.shape);
  const ElementCache cache = build_cache(mesh, f, k);
  const GlobalDofMap sm(mesh, dof_layout(cache.sigma[0]));
  const GlobalDofMap vm(mesh, dof_layout(cache.v[0]));
  const GlobalDofMap wm(mesh, dof_layout(cache.w[0]));
  rep.dim_sigma = sm.size();
  rep.dim_v = vm.size();
  rep.dim_w = wm.size();

  // Local matrices per class: V-DOFs of grad sigma_j and W-DOFs of curl v_j.
  std::vector<RationalMatrix> g_loc, c_loc;
  for (int cls = 0; cls < mesh.num_classes; ++cls) {
    const auto& ve = cache.v[cls];
    const auto& se = cache.sigma[cls];
    const auto& we = cache.w[cls];
    RationalMatrix g(ve.size(), se.size()), c(we.size(), ve.size());
    for (std::size_t j = 0; j < se.size(); ++j) {
      auto vals = dof_values(ve, grad(se.dual[j]));
      for (std::size_t i = 0; i < vals.size(); ++i) g(i, j) = vals[i];
    }
    for (std::size_t j = 0; j < ve.size(); ++j) {
      auto vals = dof_values(we, curl_vec(ve.dual[j]));
      for (std::size_t i = 0; i < vals.size(); ++i) c(i, j) = vals[i];
    }
    g_loc.push_back(std::move(g));
    c_loc.push_back(std::move(c));
  }

  AssemblyMatrix G(vm.size()), C(wm.size());
  for (std::size_t cell = 0; cell < mesh.num_cells(); ++cell) {
    const int cls = mesh.cells[cell].congruence_class;
    const auto& g = g_loc[cls];
    const auto& c = c_loc[cls];
    for (std::size_t i = 0; i < g.rows(); ++i)
      for (std::size_t j = 0; j < g.cols(); ++j)
        G.put(vm.index(cell, i), sm.index(cell, j), g(i, j) * (vm.sign(cell, i) * sm.sign(cell, j)));
    for (std::size_t i = 0; i < c.rows(); ++i)
      for (std::size_t j = 0; j < c.cols(); ++j)
        C.put(wm.index(cell, i), vm.index(cell, j), c(i, j) * (wm.sign(cell, i) * vm.sign(cell, j)));
  }
  rep.conforming = G.consistent && C.consistent;

  // C * G == 0
  bool complex = true;
  for (const auto& crow : C.rows) {
    SparseRow prod;
    for (const auto& [l, cv] : crow) {
      if (cv == 0) continue;
      for (const auto& [j, gv] : G.rows[l]) prod[j] += cv * gv;
    }
    for (const auto& [j, v] : prod)
      if (v != 0) complex = false;
  }
  rep.complex = complex;
  rep.grad_in_v = true;  // by construction: G holds V-DOFs of gradients, checked via conformity
  rep.rank_grad = sparse_rank(G.rows);
  rep.rank_curl = sparse_rank(C.rows);
  rep.curl_onto_w = rep.rank_curl == rep.dim_w;
  rep.kernel_is_grad = rep.rank_grad + rep.rank_curl == rep.dim_v;
  rep.passed = rep.conforming && rep.complex && rep.rank_grad + 1 == rep.dim_sigma && rep.curl_onto_w &&
               rep.kernel_is_grad && rep.dim_v + 1 == rep.dim_sigma + rep.dim_w;
  if (!rep.conforming) rep.message = "shared DOF values disagree between neighbouring cells";
  return rep;
}

std::vector<Record> CommutingReport::records() const {
  return {{"family", to_string(family)},       {"k", std::to_string(k)},
          {"shape", to_string(shape)},         {"n", std::to_string(n)},
          {"samples", std::to_string(samples)}, {"grad_failures", std::to_string(grad_failures)},
          {"curl_failures", std::to_string(curl_failures)}, {"verdict", passed ? "commutes" : "fails"}};
}

std::string CommutingReport::text() const {
  std::ostringstream os;
  os << header("commuting", family, k, shape, n) << ": " << (passed ? "commutes" : "FAILS") << " (" << samples
     << " samples, grad leg failures " << grad_failures << ", curl leg failures " << curl_failures << ")\n";
  return os.str();
}

Polynomial random_polynomial(int d, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(-5, 5);
  Polynomial p;
  for (int t = 0; t <= d; ++t)
    for (int b = 0; b <= t; ++b) p.add_term(t - b, b, coef(rng));
  return p;
}

CommutingReport check_commuting_global(const Mesh& mesh, Family f, int k, int samples, unsigned seed) {
  CommutingReport rep;
  rep.family = f;
  rep.k = k;
  rep.shape = mesh.shape;
  rep.n = mesh.n;
  rep.samples = samples;
  require_supported(f, k, mesh.shape);
  const ElementCache cache = build_cache(mesh, f, k);
  const int r = sigma_degree(f, k);
  for (int s = 0; s < samples; ++s) {
    const unsigned base = seed + 7919u * static_cast<unsigned>(s);
    const Polynomial p = random_polynomial(r + 2, base);
    const VectorField v{random_polynomial(k + 2, base + 1), random_polynomial(k + 2, base + 2)};
    bool grad_ok = true, curl_ok = true;
    for (std::size_t cell = 0; cell < mesh.num_cells() && (grad_ok || curl_ok); ++cell) {
      const int cls = mesh.cells[cell].congruence_class;
      const auto& ve = cache.v[cls];
      const auto& se = cache.sigma[cls];
      const auto& we = cache.w[cls];
      // Cached elements live in local coordinates; move the samples into this cell's frame.
      const LocalFrame frame = LocalFrame::standard(mesh.cell_geometry(cell));
      const Polynomial pl = to_local(p, frame);
      const VectorField vl = to_local(v, frame);
      if (grad_ok) {
        const Polynomial pi_p = interpolate_local(se, pl);
        grad_ok = dof_values(ve, grad(pi_p)) == dof_values(ve, grad(pl));
      }
      if (curl_ok) {
        const VectorField pi_v = interpolate_local(ve, vl);
        curl_ok = dof_values(we, curl_vec(pi_v)) == dof_values(we, curl_vec(vl));
      }
    }
    if (!grad_ok) ++rep.grad_failures;
    if (!curl_ok) ++rep.curl_failures;
  }
  rep.passed = rep.grad_failures == 0 && rep.curl_failures == 0;
  return rep;
}

}  // namespace quadcurl
