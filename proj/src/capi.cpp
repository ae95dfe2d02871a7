#include "quadcurl/quadcurl.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>

#include "quadcurl/analysis.hpp"
#include "quadcurl/checks.hpp"

using namespace quadcurl;

struct qc_element {
  FiniteElement el;
  std::vector<Polynomial> curl;
  std::vector<VectorField> curlcurl;
};

struct qc_report {
  CheckReport r;
};

struct qc_study {
  StudyResult r;
};

namespace {

thread_local std::string last_error;

qc_status fail(qc_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

template <class F>
qc_status guarded(F&& f) {
  try {
    return f();
  } catch (const InvalidArgument& e) {
    return fail(QC_ERR_INVALID_ARGUMENT, e.what());
  } catch (const UnsupportedCombination& e) {
    return fail(QC_ERR_UNSUPPORTED, e.what());
  } catch (const UnisolvenceFailure& e) {
    return fail(QC_ERR_UNISOLVENCE, e.what());
  } catch (const SolverFailure& e) {
    return fail(QC_ERR_SOLVER, e.what());
  } catch (const ConfigError& e) {
    return fail(QC_ERR_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return fail(QC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(QC_ERR_INTERNAL, e.what());
  }
}

bool valid_family(qc_family f) { return f == QC_FAMILY_NEW || f == QC_FAMILY_MID || f == QC_FAMILY_HIGH; }
bool valid_shape(qc_shape s) { return s == QC_SHAPE_TRIANGLE || s == QC_SHAPE_RECTANGLE; }

Family to_family(qc_family f) {
  if (!valid_family(f)) throw InvalidArgument("unknown family");
  return f == QC_FAMILY_NEW ? Family::New : f == QC_FAMILY_MID ? Family::Mid : Family::High;
}

Shape to_shape(qc_shape s) {
  if (!valid_shape(s)) throw InvalidArgument("unknown shape");
  return s == QC_SHAPE_TRIANGLE ? Shape::Triangle : Shape::Rectangle;
}

qc_study_row to_row(const StudyRow& r) {
  qc_study_row o{};
  o.n = r.n;
  o.h = r.h;
  o.dofs = r.dofs;
  o.l2 = r.err.l2;
  o.curl = r.err.curl;
  o.curl2 = r.err.curl2;
  o.has_discrete = r.discrete.has_value();
  o.v_norm = r.discrete ? r.discrete->v : std::nan("");
  o.w_norm = r.discrete ? r.discrete->w : std::nan("");
  o.residual = r.residual;
  o.seconds = r.seconds;
  return o;
}

}  // namespace

extern "C" {

const char* qc_version(void) { return "1.0.0"; }

const char* qc_status_string(qc_status s) {
  switch (s) {
    case QC_OK: return "ok";
    case QC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QC_ERR_UNSUPPORTED: return "unsupported combination";
    case QC_ERR_UNISOLVENCE: return "unisolvence failure";
    case QC_ERR_SOLVER: return "solver failure";
    case QC_ERR_CONFIG: return "configuration error";
    case QC_ERR_IO: return "i/o error";
    case QC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* qc_last_error_message(void) { return last_error.c_str(); }

int qc_is_supported(qc_family family, int k, qc_shape shape) {
  if (!valid_family(family) || !valid_shape(shape)) return 0;
  return is_supported(to_family(family), k, to_shape(shape)) ? 1 : 0;
}

qc_status qc_element_create_reference(qc_family family, int k, qc_shape shape, qc_element** out) {
  return guarded([&] {
    if (!out) throw InvalidArgument("null output pointer");
    *out = nullptr;
    const Shape s = to_shape(shape);
    auto e = std::make_unique<qc_element>();
    e->el = make_element(to_family(family), k,
                         s == Shape::Triangle ? CellGeometry::reference_triangle() : CellGeometry::reference_rectangle());
    for (const auto& v : e->el.dual) {
      e->curl.push_back(curl_vec(v));
      e->curlcurl.push_back(curl_scalar(e->curl.back()));
    }
    *out = e.release();
    return QC_OK;
  });
}

size_t qc_element_num_dofs(const qc_element* e) { return e ? e->el.size() : 0; }

qc_status qc_element_eval(const qc_element* e, size_t i, double x, double y, double* value, double* curl,
                          double* curlcurl) {
  return guarded([&] {
    if (!e) throw InvalidArgument("null element");
    if (i >= e->el.size()) throw InvalidArgument("shape function index out of range");
    // Reference cells keep the global origin, so local and global coordinates agree.
    const double lx = x - e->el.frame().origin.x.get_d(), ly = y - e->el.frame().origin.y.get_d();
    if (value) {
      value[0] = e->el.dual[i].c1.evaluate(lx, ly);
      value[1] = e->el.dual[i].c2.evaluate(lx, ly);
    }
    if (curl) *curl = e->curl[i].evaluate(lx, ly);
    if (curlcurl) {
      curlcurl[0] = e->curlcurl[i].c1.evaluate(lx, ly);
      curlcurl[1] = e->curlcurl[i].c2.evaluate(lx, ly);
    }
    return QC_OK;
  });
}

void qc_element_destroy(qc_element* e) { delete e; }

qc_check_options qc_check_options_default(void) {
  qc_check_options o{};
  o.ns = nullptr;
  o.num_ns = 0;
  o.samples = 20;
  o.random_cells = 10;
  o.seed = 7;
  return o;
}

qc_status qc_check_run(qc_check check, qc_family family, int k, qc_shape shape, const qc_check_options* options,
                       qc_report** out) {
  return guarded([&] {
    if (!out) throw InvalidArgument("null output pointer");
    *out = nullptr;
    const qc_check_options opt = options ? *options : qc_check_options_default();
    std::vector<int> ns{2};
    if (opt.ns && opt.num_ns > 0) ns.assign(opt.ns, opt.ns + opt.num_ns);
    for (int n : ns)
      if (n < 1) throw InvalidArgument("mesh sizes must be positive");
    const Shape s = to_shape(shape);
    auto rep = std::make_unique<qc_report>();
    if (check == QC_CHECK_APPENDIX) {
      rep->r = check_appendix(s);
    } else {
      const Combination c{to_family(family), k, s};
      require_supported(c.family, c.k, c.shape);
      switch (check) {
        case QC_CHECK_UNISOLVENCE:
          if (opt.random_cells < 0) throw InvalidArgument("random cell count must be non-negative");
          rep->r = check_unisolvence(c, opt.random_cells, opt.seed);
          break;
        case QC_CHECK_EXACTNESS:
          rep->r = check_exactness(c, 0);
          for (int n : ns) rep->r.merge(check_exactness_on(c, n));
          break;
        case QC_CHECK_COMMUTING:
          if (opt.samples < 1) throw InvalidArgument("sample count must be positive");
          rep->r = check_commuting(c, ns[0], opt.samples, opt.seed);
          for (std::size_t i = 1; i < ns.size(); ++i) rep->r.merge(check_commuting(c, ns[i], opt.samples, opt.seed));
          break;
        default:
          throw InvalidArgument("unknown check");
      }
    }
    *out = rep.release();
    return QC_OK;
  });
}

int qc_report_passed(const qc_report* r) { return r && r->r.passed ? 1 : 0; }

const char* qc_report_text(const qc_report* r) { return r ? r->r.text.c_str() : ""; }

size_t qc_report_num_records(const qc_report* r) { return r ? r->r.records.size() : 0; }

qc_status qc_report_record(const qc_report* r, size_t i, const char** key, const char** value) {
  return guarded([&] {
    if (!r || !key || !value) throw InvalidArgument("null argument");
    if (i >= r->r.records.size()) throw InvalidArgument("record index out of range");
    *key = r->r.records[i].first.c_str();
    *value = r->r.records[i].second.c_str();
    return QC_OK;
  });
}

void qc_report_destroy(qc_report* r) { delete r; }

qc_study_config qc_study_config_default(void) {
  static const int default_ns[] = {20, 40, 80, 160};
  qc_study_config c{};
  c.family = QC_FAMILY_NEW;
  c.shape = QC_SHAPE_RECTANGLE;
  c.k = 2;
  c.ns = default_ns;
  c.num_ns = 4;
  c.quad_order = 12;
  c.solver = QC_SOLVER_DIRECT;
  c.tolerance = 1e-10;
  return c;
}

qc_status qc_study_run(const qc_study_config* config, qc_progress_fn progress, void* user, qc_study** out) {
  return guarded([&] {
    if (!config || !out) throw InvalidArgument("null argument");
    *out = nullptr;
    if (!config->ns && config->num_ns > 0) throw InvalidArgument("null mesh size list");
    if (config->solver != QC_SOLVER_DIRECT && config->solver != QC_SOLVER_CG) throw InvalidArgument("unknown solver");
    StudyConfig c;
    c.family = to_family(config->family);
    c.shape = to_shape(config->shape);
    c.k = config->k;
    c.ns.assign(config->ns, config->ns + config->num_ns);
    c.quad_order = config->quad_order;
    c.solver.method = config->solver == QC_SOLVER_CG ? SolverMethod::CG : SolverMethod::Direct;
    c.solver.tolerance = config->tolerance;
    ProgressFn cb;
    if (progress)
      cb = [progress, user](const StudyRow& r) {
        const qc_study_row row = to_row(r);
        progress(&row, user);
      };
    auto s = std::make_unique<qc_study>();
    s->r = run_study(c, cb);
    *out = s.release();
    return QC_OK;
  });
}

size_t qc_study_num_rows(const qc_study* s) { return s ? s->r.rows.size() : 0; }

qc_status qc_study_row_get(const qc_study* s, size_t i, qc_study_row* out) {
  return guarded([&] {
    if (!s || !out) throw InvalidArgument("null argument");
    if (i >= s->r.rows.size()) throw InvalidArgument("row index out of range");
    *out = to_row(s->r.rows[i]);
    return QC_OK;
  });
}

qc_status qc_study_rate(const qc_study* s, const char* column, size_t i, double* out) {
  return guarded([&] {
    if (!s || !column || !out) throw InvalidArgument("null argument");
    if (i >= s->r.rows.size()) throw InvalidArgument("row index out of range");
    const std::string name(column);
    if (name != "l2" && name != "curl" && name != "curl2" && name != "v_norm" && name != "w_norm")
      throw InvalidArgument("unknown column " + name);
    *out = s->r.rates(name)[i];
    return QC_OK;
  });
}

qc_status qc_study_format(const qc_study* s, qc_format format, char** out) {
  return guarded([&] {
    if (!s || !out) throw InvalidArgument("null argument");
    *out = nullptr;
    std::string text;
    if (format == QC_FORMAT_CSV) text = format_csv(s->r);
    else if (format == QC_FORMAT_MARKDOWN) text = format_markdown(s->r);
    else throw InvalidArgument("unknown format");
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
    return QC_OK;
  });
}

qc_status qc_study_write(const qc_study* s, qc_format format, const char* path) {
  if (!path) return fail(QC_ERR_INVALID_ARGUMENT, "null path");
  char* text = nullptr;
  const qc_status st = qc_study_format(s, format, &text);
  if (st != QC_OK) return st;
  std::ofstream f(path);
  f << text;
  std::free(text);
  f.close();
  if (!f) return fail(QC_ERR_IO, std::string("cannot write ") + path);
  return QC_OK;
}

void qc_study_destroy(qc_study* s) { delete s; }

void qc_string_free(char* s) { std::free(s); }

}  // extern "C"
