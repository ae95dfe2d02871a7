// Acceptance suite: one PASS/FAIL line per criterion, then a summary.
//
//   acceptance [--fine] [--verbose]
//
// --fine adds h = 1/320 to the lowest-order triangle and rectangle studies.
// Exit status 1 when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quadcurl/analysis.hpp"
#include "quadcurl/checks.hpp"

using namespace quadcurl;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

bool verbose = false;

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Printed rows: h = 1/n -> values per column.
using Printed = std::map<int, std::map<std::string, double>>;

const Printed kTable1{
    {20, {{"l2", 1.90386e-02}, {"curl", 4.92128e-02}, {"curl2", 2.49140e+00}}},
    {40, {{"l2", 9.46304e-03}, {"curl", 1.25357e-02}, {"curl2", 1.25626e+00}}},
    {80, {{"l2", 4.72423e-03}, {"curl", 3.14876e-03}, {"curl2", 6.29464e-01}}},
    {160, {{"l2", 2.36120e-03}, {"curl", 7.88122e-04}, {"curl2", 3.14900e-01}}},
    {320, {{"l2", 1.18329e-03}, {"curl", 1.97108e-04}, {"curl2", 1.57471e-01}}}};

const Printed kTable2{
    {20, {{"l2", 1.1286e-01}, {"v_norm", 1.4312e-02}, {"curl", 1.3911e-01}, {"curl2", 1.2610e+01}, {"w_norm", 2.0177e+00}}},
    {40, {{"l2", 5.6602e-02}, {"v_norm", 3.5786e-03}, {"curl", 3.4624e-02}, {"curl2", 6.2788e+00}, {"w_norm", 5.0321e-01}}},
    {80, {{"l2", 2.8323e-02}, {"v_norm", 8.9473e-04}, {"curl", 8.6464e-03}, {"curl2", 3.1361e+00}, {"w_norm", 1.2573e-01}}},
    {160, {{"l2", 1.4164e-02}, {"v_norm", 2.2375e-04}, {"curl", 2.1610e-03}, {"curl2", 1.5676e+00}, {"w_norm", 3.1428e-02}}},
    {320, {{"l2", 7.0832e-03}, {"v_norm", 1.1206e-04}, {"curl", 5.4022e-04}, {"curl2", 7.8375e-01}, {"w_norm", 7.8567e-03}}}};

const Printed kTable3{
    {10, {{"l2", 1.946294e-02}, {"curl", 1.831378e-01}, {"curl2", 4.821773e+00}}},
    {20, {{"l2", 5.104203e-03}, {"curl", 4.921121e-02}, {"curl2", 2.491403e+00}}},
    {40, {{"l2", 1.292287e-03}, {"curl", 1.253529e-02}, {"curl2", 1.256258e+00}}},
    {80, {{"l2", 3.241096e-04}, {"curl", 3.148659e-03}, {"curl2", 6.294644e-01}}},
    {160, {{"l2", 8.131642e-05}, {"curl", 7.880957e-04}, {"curl2", 3.148996e-01}}}};

const Printed kTable4{
    {10, {{"l2", 6.449132e-02}, {"curl", 5.664956e-01}, {"curl2", 2.563424e+01}}},
    {20, {{"l2", 1.592685e-02}, {"curl", 1.391017e-01}, {"curl2", 1.261045e+01}}},
    {40, {{"l2", 3.970283e-03}, {"curl", 3.462207e-02}, {"curl2", 6.278774e+00}}},
    {80, {{"l2", 9.918685e-04}, {"curl", 8.645999e-03}, {"curl2", 3.136060e+00}}},
    {160, {{"l2", 2.480152e-04}, {"curl", 2.160906e-03}, {"curl2", 1.567613e+00}}}};

const Printed kTable5{
    {10, {{"l2", 1.916204e-01}, {"curl", 1.831377e+00}, {"curl2", 4.821773e+01}}},
    {20, {{"l2", 4.953536e-02}, {"curl", 4.921121e-01}, {"curl2", 2.491403e+01}}},
    {40, {{"l2", 1.254233e-02}, {"curl", 1.253529e-01}, {"curl2", 1.256258e+01}}},
    {80, {{"l2", 3.145763e-03}, {"curl", 3.148659e-02}, {"curl2", 6.294644e+00}}},
    {160, {{"l2", 7.897003e-04}, {"curl", 7.880958e-03}, {"curl2", 3.148996e+00}}}};

const Printed kTable6{
    {10, {{"l2", 8.399241e-02}, {"curl", 7.736407e-01}, {"curl2", 3.117602e+01}}},
    {20, {{"l2", 2.055671e-02}, {"curl", 1.924122e-01}, {"curl2", 1.556987e+01}}},
    {40, {{"l2", 5.125523e-03}, {"curl", 4.804486e-02}, {"curl2", 7.783057e+00}}},
    {80, {{"l2", 1.280556e-03}, {"curl", 1.200764e-02}, {"curl2", 3.891305e+00}}},
    {160, {{"l2", 3.203172e-04}, {"curl", 3.001689e-03}, {"curl2", 1.945625e+00}}}};

const Printed kTable7{
    {4, {{"l2", 6.482470e-02}, {"curl", 9.955505e-01}, {"curl2", 2.796216e+01}}},
    {8, {{"l2", 4.580398e-03}, {"curl", 1.388809e-01}, {"curl2", 7.337119e+00}}},
    {16, {{"l2", 2.927226e-04}, {"curl", 1.780427e-02}, {"curl2", 1.854476e+00}}},
    {32, {{"l2", 1.838464e-05}, {"curl", 2.239038e-03}, {"curl2", 4.648552e-01}}},
    {64, {{"l2", 1.166284e-06}, {"curl", 2.802981e-04}, {"curl2", 1.162907e-01}}}};

std::deque<StudyResult> all_studies;  // stable references

const StudyResult& study(Family f, Shape s, int k, std::vector<int> ns) {
  StudyConfig c;
  c.family = f;
  c.shape = s;
  c.k = k;
  c.ns = std::move(ns);
  all_studies.push_back(run_study(c));
  if (verbose) std::cout << format_markdown(all_studies.back()) << '\n';
  return all_studies.back();
}

struct Deviation {
  double worst = 0.0;
  std::string where;
  double min_ratio = INFINITY, max_ratio = 0.0;  // ours / printed
};

/// Worst relative deviation from the printed values over every row and column.
Deviation deviation(const StudyResult& r, const Printed& printed) {
  Deviation d;
  for (const std::string col : {"l2", "curl", "curl2", "v_norm", "w_norm"}) {
    const std::vector<double> v = r.column(col);
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
      const auto row = printed.find(r.rows[i].n);
      if (row == printed.end() || !row->second.count(col)) continue;
      const double ref = row->second.at(col);
      const double dev = std::abs(v[i] / ref - 1.0);
      d.min_ratio = std::min(d.min_ratio, v[i] / ref);
      d.max_ratio = std::max(d.max_ratio, v[i] / ref);
      if (dev > d.worst) {
        d.worst = dev;
        d.where = col + " at h=1/" + std::to_string(r.rows[i].n) + ": " + fmt("%.6e", v[i]) + " vs " + fmt("%.6e", ref);
      }
    }
  }
  return d;
}

Outcome magnitudes(const StudyResult& r, const Printed& printed, double tol, const std::string& label) {
  const Deviation d = deviation(r, printed);
  Outcome o;
  o.pass = d.worst <= tol;
  o.detail = label + " magnitudes max dev " + fmt("%.2f%%", 100 * d.worst) + " (tol " + fmt("%.0f%%", 100 * tol) + ")";
  if (!o.pass)
    o.detail += ", worst " + d.where + ", ours/printed in [" + fmt("%.4f", d.min_ratio) + ", " +
                fmt("%.4f", d.max_ratio) + "]";
  return o;
}

/// Rates on bisection i (between rows i-1 and i) against expected values.
Outcome rates(const StudyResult& r, std::size_t i, const std::vector<std::string>& cols,
              const std::vector<double>& expected, double tol, const std::string& label) {
  Outcome o;
  std::ostringstream os;
  os << label << " rates h=1/" << r.rows[i - 1].n << "->1/" << r.rows[i].n << " (";
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const double got = r.rates(cols[c])[i];
    if (!(std::abs(got - expected[c]) <= tol)) o.pass = false;
    os << (c ? ", " : "") << fmt("%.4f", got);
  }
  os << ") want (";
  for (std::size_t c = 0; c < expected.size(); ++c) os << (c ? ", " : "") << expected[c];
  os << ") +-" << tol;
  o.detail = os.str();
  return o;
}

Outcome all_of(const std::vector<Outcome>& parts) {
  Outcome o;
  for (const Outcome& p : parts) {
    o.pass = o.pass && p.pass;
    o.detail += (o.detail.empty() ? "" : "; ") + p.detail;
  }
  return o;
}

Outcome from_reports(const std::vector<CheckReport>& reps, const std::string& what) {
  Outcome o;
  int failed = 0;
  for (const CheckReport& r : reps)
    if (!r.passed) {
      ++failed;
      o.pass = false;
      o.detail += (o.detail.empty() ? "" : "; ") + r.name;
    }
  const std::string head = std::to_string(reps.size() - failed) + "/" + std::to_string(reps.size()) + " " + what;
  o.detail = o.detail.empty() ? head : head + "; failed: " + o.detail;
  return o;
}

std::string record(const CheckReport& r, const std::string& key) {
  for (const auto& [k, v] : r.records)
    if (k == key) return v;
  return "?";
}

Outcome ac1() {
  Outcome o;
  for (Shape s : {Shape::Rectangle, Shape::Triangle}) {
    const CheckReport r = check_appendix(s);
    o.pass = o.pass && r.passed;
    o.detail += std::string(o.detail.empty() ? "" : "; ") + to_string(s) + ": signed matches " +
                record(r, "signed_matches") + ", DOF matrix signed permutation " +
                record(r, "dof_matrix_signed_permutation") + ", printed fields in V " + record(r, "published_in_v");
  }
  return o;
}

Outcome ac2() {
  const Polynomial x = Polynomial::x1(), y = Polynomial::x2();
  const CellGeometry t = CellGeometry::reference_triangle();
  const CellGeometry r = CellGeometry::reference_rectangle();
  const VectorField printed_t =
      fraction(1, 20) * (x * y * (Polynomial(Rational(4)) * x + Polynomial(Rational(4)) * y - Polynomial(Rational(5)))) *
      position_perp();
  const VectorField printed_r =
      fraction(1, 12) * (Polynomial(Rational(2)) * x * x * y * y - Polynomial(Rational(3)) * x * x -
                         Polynomial(Rational(3)) * y * y + Polynomial(Rational(6))) *
      position_perp();
  const VectorField pt = poincare(bubble(t)), pr = poincare(bubble(r));
  auto constant_traces = [](const VectorField& v, const CellGeometry& cell) {
    for (std::size_t e = 0; e < cell.num_edges(); ++e) {
      const auto [a, b] = cell.edge(e);
      const Point d = cell.edge_direction(e);
      const Univariate tr = restrict_to_segment(v.c1 * d.x + v.c2 * d.y, a, d);
      for (std::size_t i = 1; i < tr.size(); ++i)
        if (tr[i] != 0) return false;
    }
    return true;
  };
  Outcome o;
  const bool lit_t = pt == printed_t, lit_r = pr == printed_r;
  std::string t_note = lit_t ? "p B_t matches" : "p B_t differs";
  if (!lit_t && poincare(-bubble(t)) == printed_t) t_note += " (printed form is p(-B_t))";
  std::string r_note = lit_r ? "p B_r matches" : "p B_r differs";
  if (!lit_r && poincare(Rational(16) * bubble(r)) == printed_r) r_note += " (printed form is p(16 B_r))";
  bool tilde = true;
  for (const CellGeometry& cell : {t, r}) {
    const ModifiedPoincare m = modified_poincare(bubble(cell), cell);
    tilde = tilde && curl_vec(m.field) == bubble(cell) && constant_traces(m.field, cell);
  }
  o.pass = lit_t && lit_r && tilde;
  o.detail = t_note + "; " + r_note + "; modified operator on both bubbles: curl = bubble and constant traces " +
             (tilde ? "yes" : "no");
  return o;
}

Outcome ac3() {
  std::vector<CheckReport> reps;
  for (const Combination& c : supported_combinations()) reps.push_back(check_unisolvence(c, 10, 1));
  return from_reports(reps, "combinations unisolvent on reference + 10 random cells");
}

Outcome ac4() {
  std::vector<CheckReport> reps;
  for (const Combination& c : supported_combinations()) reps.push_back(check_exactness(c, 4));
  return from_reports(reps, "combinations exact (local, global n = 1..4)");
}

Outcome ac5() {
  std::vector<CheckReport> reps;
  for (const Combination& c : supported_combinations()) reps.push_back(check_commuting(c, 2, 20, 7));
  return from_reports(reps, "combinations commute (20 samples each, n = 2)");
}

Outcome ac6(bool fine) {
  std::vector<int> ns{20, 40, 80, 160};
  if (fine) ns.push_back(320);
  const StudyResult& r = study(Family::New, Shape::Triangle, 2, ns);
  return all_of({rates(r, r.rows.size() - 1, {"l2", "curl", "curl2"}, {1, 2, 1}, 0.1, "tri"),
                 magnitudes(r, kTable1, 0.10, "tri")});
}

Outcome ac7(bool fine) {
  std::vector<int> ns{20, 40, 80, 160};
  if (fine) ns.push_back(320);
  const StudyResult& r = study(Family::New, Shape::Rectangle, 2, ns);
  std::vector<Outcome> parts{magnitudes(r, kTable2, 0.02, "rect")};
  for (std::size_t i = 1; i <= 3; ++i) parts.push_back(rates(r, i, {"v_norm", "w_norm"}, {2, 2}, 0.2, "discrete"));
  return all_of(parts);
}

Outcome ac8() {
  const std::vector<int> ns{10, 20, 40, 80, 160};
  const StudyResult& t = study(Family::Mid, Shape::Triangle, 2, ns);
  const StudyResult& r = study(Family::Mid, Shape::Rectangle, 2, ns);
  return all_of({rates(t, 4, {"l2", "curl", "curl2"}, {2, 2, 1}, 0.1, "tri"), magnitudes(t, kTable3, 0.10, "tri"),
                 rates(r, 4, {"l2", "curl", "curl2"}, {2, 2, 1}, 0.1, "rect"), magnitudes(r, kTable4, 0.02, "rect")});
}

Outcome ac9() {
  const std::vector<int> ns{10, 20, 40, 80, 160};
  const StudyResult& t = study(Family::High, Shape::Triangle, 2, ns);
  const StudyResult& r = study(Family::High, Shape::Rectangle, 2, ns);
  const StudyResult& r3 = study(Family::High, Shape::Rectangle, 3, {4, 8, 16, 32, 64});
  Outcome o = all_of({rates(t, 4, {"l2", "curl", "curl2"}, {2, 2, 1}, 0.1, "tri k=2"),
                      rates(r, 4, {"l2", "curl", "curl2"}, {2, 2, 1}, 0.1, "rect k=2"),
                      rates(r3, 4, {"l2", "curl", "curl2"}, {4, 3, 2}, 0.15, "rect k=3"),
                      magnitudes(r3, kTable7, 0.02, "rect k=3")});
  // Magnitudes of the k = 2 studies are informational only.
  o.detail += "; info: k=2 magnitudes max dev tri " + fmt("%.2f%%", 100 * deviation(t, kTable5).worst) + ", rect " +
              fmt("%.2f%%", 100 * deviation(r, kTable6).worst);
  return o;
}

Outcome ac10() {
  Outcome o;
  int monomials = 0;
  for (int d = 0; d <= 10; ++d)
    for (int a = 0; a <= d; ++a) {
      const Polynomial m = Polynomial::monomial(a, d - a);
      const VectorField p = poincare(m);
      ++monomials;
      if (curl_vec(p) != m || curl_vec(koszul(m)) != Rational(d + 2) * m || p != fraction(1, d + 2) * koszul(m))
        o.pass = false;
    }
  int cells = 0, contained = 0;
  std::mt19937 rng(5);
  for (const Combination& c : supported_combinations()) {
    const int r = sigma_degree(c.family, c.k);
    std::vector<CellGeometry> list{c.shape == Shape::Triangle ? CellGeometry::reference_triangle()
                                                              : CellGeometry::reference_rectangle()};
    for (int i = 0; i < 3; ++i) list.push_back(random_cell(c.shape, rng));
    for (const CellGeometry& cell : list) {
      const VectorSpace v = v_space(r, c.k, LocalFrame::standard(cell));
      std::vector<VectorField> pr;
      for (const Polynomial& m : monomial_basis(Shape::Triangle, r - 1)) {
        pr.push_back({m, Polynomial()});
        pr.push_back({Polynomial(), m});
      }
      ++cells;
      if (spans(v.members, pr)) ++contained;
      else o.pass = false;
    }
  }
  o.detail = std::to_string(monomials) + " monomials (degree <= 10) satisfy curl p u = u, curl k u = (d+2) u, " +
             "p u = k u/(d+2): " + (o.pass ? "yes" : "no") + "; vector P_{r-1} in V on " +
             std::to_string(contained) + "/" + std::to_string(cells) + " cells";
  return o;
}

Outcome ac11() {
  Outcome o;
  double worst_res = 0.0;
  int levels = 0;
  for (const StudyResult& s : all_studies)
    for (const StudyRow& row : s.rows) {
      worst_res = std::max(worst_res, row.residual);
      ++levels;
    }
  if (!(worst_res <= 1e-10)) o.pass = false;
  double worst_div = 0.0;
  for (Family f : {Family::New, Family::Mid, Family::High})
    for (Shape s : {Shape::Triangle, Shape::Rectangle}) {
      const Discretization d(uniform_mesh(s, 20), f, 2);
      SparseSystem sys = assemble(
          d, [](double x, double y) { return manufactured::at(x, y).f1; },
          [](double x, double y) { return manufactured::at(x, y).f2; }, 12);
      apply_bc(sys);
      const SolveResult sol = solve(sys, {});
      worst_div = std::max(worst_div, divergence_consistency(d, sol.x, 12));
    }
  if (!(worst_div <= 1e-8)) o.pass = false;
  o.detail = "max relative residual " + fmt("%.2e", worst_res) + " over " + std::to_string(levels) +
             " levels (tol 1e-10); max (u_h, grad q)/(|u_h| |grad q|) at h=1/20 " + fmt("%.2e", worst_div) +
             " over 6 k=2 elements (tol 1e-8)";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  bool fine = false;
  app.add_flag("--fine", fine, "Include h = 1/320 in the lowest-order studies");
  app.add_flag("--verbose", verbose, "Print every study table");
  CLI11_PARSE(app, argc, argv);

  struct Criterion {
    const char* id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"AC1", "lowest-order basis vs printed lists", ac1},
      {"AC2", "printed Poincare images of the bubbles", ac2},
      {"AC3", "unisolvence", ac3},
      {"AC4", "exactness", ac4},
      {"AC5", "commuting diagrams", ac5},
      {"AC6", "new family, triangles, k=2", [fine] { return ac6(fine); }},
      {"AC7", "new family, rectangles, k=2", [fine] { return ac7(fine); }},
      {"AC8", "mid family, k=2", ac8},
      {"AC9", "high family, k=2 and rect k=3", ac9},
      {"AC10", "null-homotopy and containment", ac10},
      {"AC11", "solver sanity", ac11},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("%-4s %s  %s: %s [%.1f s]\n", c.id, o.pass ? "PASS" : "FAIL", c.title, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
