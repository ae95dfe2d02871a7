// Command-line driver: convergence studies and algebraic checks through the C API.
//
//   quadcurl-cli --study --family new --shape rect --k 2 --n 20,40,80,160 --out csv
//   quadcurl-cli --check unisolvence --all
//
// Exit codes: 0 success, 1 failed check or solver error, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quadcurl/quadcurl.h"

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Combo {
  qc_family family;
  int k;
  qc_shape shape;
};

const std::map<std::string, qc_family> kFamilies{
    {"new", QC_FAMILY_NEW}, {"mid", QC_FAMILY_MID}, {"high", QC_FAMILY_HIGH}};
const std::map<std::string, qc_shape> kShapes{{"tri", QC_SHAPE_TRIANGLE}, {"rect", QC_SHAPE_RECTANGLE}};
const std::map<std::string, qc_check> kChecks{{"unisolvence", QC_CHECK_UNISOLVENCE},
                                              {"exactness", QC_CHECK_EXACTNESS},
                                              {"commuting", QC_CHECK_COMMUTING},
                                              {"appendix", QC_CHECK_APPENDIX}};

int usage_error(const std::string& msg) {
  std::cerr << "quadcurl-cli: " << msg << '\n';
  return kUsage;
}

int status_exit(qc_status s) {
  std::cerr << "quadcurl-cli: " << qc_status_string(s) << ": " << qc_last_error_message() << '\n';
  return (s == QC_ERR_INVALID_ARGUMENT || s == QC_ERR_UNSUPPORTED) ? kUsage : kFailed;
}

bool emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return true;
  }
  std::ofstream f(path);
  f << text;
  f.close();
  if (!f) {
    std::cerr << "quadcurl-cli: cannot write " << path << '\n';
    return false;
  }
  return true;
}

void print_progress(const qc_study_row* r, void*) {
  std::fprintf(stderr, "h = 1/%d: %zu dofs, residual %.2e, %.1f s\n", r->n, r->dofs, r->residual, r->seconds);
}

int run_study(const Combo& c, const std::vector<int>& ns, int quad, qc_solver solver, double tol, qc_format fmt,
              const std::string& path) {
  qc_study_config cfg = qc_study_config_default();
  cfg.family = c.family;
  cfg.shape = c.shape;
  cfg.k = c.k;
  if (!ns.empty()) {
    cfg.ns = ns.data();
    cfg.num_ns = ns.size();
  }
  cfg.quad_order = quad;
  cfg.solver = solver;
  cfg.tolerance = tol;
  qc_study* study = nullptr;
  if (qc_status s = qc_study_run(&cfg, print_progress, nullptr, &study); s != QC_OK) return status_exit(s);
  char* text = nullptr;
  const qc_status s = qc_study_format(study, fmt, &text);
  qc_study_destroy(study);
  if (s != QC_OK) return status_exit(s);
  const bool ok = emit(text, path);
  qc_string_free(text);
  return ok ? kOk : kFailed;
}

int run_checks(const std::vector<qc_check>& checks, const std::vector<Combo>& combos, const std::vector<int>& ns,
               qc_format fmt, const std::string& path) {
  qc_check_options opt = qc_check_options_default();
  if (!ns.empty()) {
    opt.ns = ns.data();
    opt.num_ns = ns.size();
  }
  std::ostringstream out;
  if (fmt == QC_FORMAT_CSV) out << "report,key,value\n";
  int failed = 0, report_index = 0;
  for (qc_check check : checks) {
    std::vector<Combo> targets = combos;
    if (check == QC_CHECK_APPENDIX) {
      // One report per shape; family and k do not apply.
      targets.clear();
      for (const Combo& c : combos) {
        bool seen = false;
        for (const Combo& t : targets) seen = seen || t.shape == c.shape;
        if (!seen) targets.push_back({QC_FAMILY_NEW, 2, c.shape});
      }
    }
    for (const Combo& c : targets) {
      qc_report* rep = nullptr;
      if (qc_status s = qc_check_run(check, c.family, c.k, c.shape, &opt, &rep); s != QC_OK) return status_exit(s);
      if (!qc_report_passed(rep)) ++failed;
      if (fmt == QC_FORMAT_CSV) {
        for (size_t i = 0; i < qc_report_num_records(rep); ++i) {
          const char *key = nullptr, *value = nullptr;
          qc_report_record(rep, i, &key, &value);
          out << report_index << ',' << key << ',' << value << '\n';
        }
        out << report_index << ",passed," << (qc_report_passed(rep) ? "yes" : "no") << '\n';
      } else {
        out << qc_report_text(rep);
      }
      ++report_index;
      qc_report_destroy(rep);
    }
  }
  if (fmt != QC_FORMAT_CSV)
    out << report_index - failed << '/' << report_index << " checks passed\n";
  if (!emit(out.str(), path)) return kFailed;
  return failed == 0 ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quad-curl element checks and convergence studies"};
  app.set_version_flag("--version", std::string(qc_version()));

  bool study = false, all = false;
  std::string check, family = "new", shape = "tri", solver = "direct", out = "md", path;
  int k = 2, quad = 12;
  double tol = 1e-10;
  std::vector<int> ns;

  auto* study_opt = app.add_flag("--study", study, "Run a convergence study for the manufactured solution");
  auto* check_opt = app.add_option("--check", check, "Run an algebraic check")
                        ->check(CLI::IsMember({"unisolvence", "exactness", "commuting", "appendix", "all"}));
  study_opt->excludes(check_opt);
  app.add_flag("--all", all, "Check every supported (family, k, shape)");
  app.add_option("--family", family)->check(CLI::IsMember({"new", "mid", "high"}));
  app.add_option("--shape", shape)->check(CLI::IsMember({"tri", "rect"}));
  app.add_option("--k", k);
  app.add_option("--n", ns, "Mesh sizes, comma separated (h = 1/n)")->delimiter(',');
  app.add_option("--quad", quad, "Quadrature degree of exactness");
  app.add_option("--solver", solver)->check(CLI::IsMember({"direct", "cg"}));
  app.add_option("--tol", tol, "Relative residual tolerance");
  app.add_option("--out", out)->check(CLI::IsMember({"csv", "md"}));
  app.add_option("--path", path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (!study && check.empty()) return usage_error("one of --study or --check is required");
  const qc_format fmt = out == "csv" ? QC_FORMAT_CSV : QC_FORMAT_MARKDOWN;
  const Combo combo{kFamilies.at(family), k, kShapes.at(shape)};

  if (study) {
    if (all) return usage_error("--all applies to --check only");
    if (!qc_is_supported(combo.family, combo.k, combo.shape))
      return usage_error("unsupported combination: family " + family + ", k = " + std::to_string(k) + ", " + shape);
    return run_study(combo, ns, quad, solver == "cg" ? QC_SOLVER_CG : QC_SOLVER_DIRECT, tol, fmt, path);
  }

  std::vector<Combo> combos;
  if (all) {
    for (qc_family f : {QC_FAMILY_NEW, QC_FAMILY_MID, QC_FAMILY_HIGH})
      for (qc_shape s : {QC_SHAPE_TRIANGLE, QC_SHAPE_RECTANGLE})
        for (int kk = 2; kk <= 4; ++kk)
          if (qc_is_supported(f, kk, s)) combos.push_back({f, kk, s});
  } else {
    if (check != "appendix" && !qc_is_supported(combo.family, combo.k, combo.shape))
      return usage_error("unsupported combination: family " + family + ", k = " + std::to_string(k) + ", " + shape);
    combos.push_back(combo);
  }
  std::vector<qc_check> checks;
  if (check == "all")
    for (const auto& [name, c] : kChecks) checks.push_back(c);
  else
    checks.push_back(kChecks.at(check));
  return run_checks(checks, combos, ns, fmt, path);
}
