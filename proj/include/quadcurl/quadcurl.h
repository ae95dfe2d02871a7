#ifndef QUADCURL_QUADCURL_H
#define QUADCURL_QUADCURL_H

/* C interface to the quad-curl element library.
 *
 * Every call that can fail returns a qc_status; on failure the message is
 * available from qc_last_error_message() until the next failing call on the
 * same thread. Handles are opaque and owned by the caller. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define QC_API __declspec(dllexport)
#else
#define QC_API __attribute__((visibility("default")))
#endif

typedef enum {
  QC_OK = 0,
  QC_ERR_INVALID_ARGUMENT = 1,
  QC_ERR_UNSUPPORTED = 2,
  QC_ERR_UNISOLVENCE = 3,
  QC_ERR_SOLVER = 4,
  QC_ERR_CONFIG = 5,
  QC_ERR_IO = 6,
  QC_ERR_INTERNAL = 7
} qc_status;

typedef enum { QC_FAMILY_NEW = 0, QC_FAMILY_MID = 1, QC_FAMILY_HIGH = 2 } qc_family;
typedef enum { QC_SHAPE_TRIANGLE = 0, QC_SHAPE_RECTANGLE = 1 } qc_shape;
typedef enum {
  QC_CHECK_UNISOLVENCE = 0,
  QC_CHECK_EXACTNESS = 1,
  QC_CHECK_COMMUTING = 2,
  QC_CHECK_APPENDIX = 3
} qc_check;
typedef enum { QC_SOLVER_DIRECT = 0, QC_SOLVER_CG = 1 } qc_solver;
typedef enum { QC_FORMAT_CSV = 0, QC_FORMAT_MARKDOWN = 1 } qc_format;

typedef struct qc_element qc_element;
typedef struct qc_report qc_report;
typedef struct qc_study qc_study;

QC_API const char* qc_version(void);
QC_API const char* qc_status_string(qc_status s);
QC_API const char* qc_last_error_message(void);

/* 1 if (family, k, shape) is supported: triangles k = 2..4, rectangles k = 2..3. */
QC_API int qc_is_supported(qc_family family, int k, qc_shape shape);

/* ---- elements on the reference cells: (0,0),(1,0),(0,1) and (-1,1)^2 ---- */

QC_API qc_status qc_element_create_reference(qc_family family, int k, qc_shape shape, qc_element** out);
QC_API size_t qc_element_num_dofs(const qc_element* e);
/* Shape function i at (x, y). Any of value[2], curl, curlcurl[2] may be NULL. */
QC_API qc_status qc_element_eval(const qc_element* e, size_t i, double x, double y, double* value, double* curl,
                                 double* curlcurl);
QC_API void qc_element_destroy(qc_element* e);

/* ---- algebraic checks ---- */

typedef struct {
  const int* ns;      /* mesh sizes for exactness and commuting; NULL means {2} */
  size_t num_ns;
  int samples;        /* commuting samples */
  int random_cells;   /* unisolvence */
  unsigned seed;
} qc_check_options;

QC_API qc_check_options qc_check_options_default(void);
/* The appendix check ignores family and k. A failed check is not an error:
 * the call returns QC_OK and qc_report_passed() is 0. */
QC_API qc_status qc_check_run(qc_check check, qc_family family, int k, qc_shape shape,
                              const qc_check_options* options, qc_report** out);
QC_API int qc_report_passed(const qc_report* r);
QC_API const char* qc_report_text(const qc_report* r);
QC_API size_t qc_report_num_records(const qc_report* r);
QC_API qc_status qc_report_record(const qc_report* r, size_t i, const char** key, const char** value);
QC_API void qc_report_destroy(qc_report* r);

/* ---- convergence studies for the manufactured solution ---- */

typedef struct {
  qc_family family;
  qc_shape shape;
  int k;
  const int* ns; /* strictly increasing mesh sizes, h = 1/n */
  size_t num_ns;
  int quad_order;
  qc_solver solver;
  double tolerance;
} qc_study_config;

typedef struct {
  int n;
  double h;
  size_t dofs;
  double l2, curl, curl2;
  int has_discrete; /* rectangles only */
  double v_norm, w_norm;
  double residual;
  double seconds;
} qc_study_row;

typedef void (*qc_progress_fn)(const qc_study_row* row, void* user);

QC_API qc_study_config qc_study_config_default(void);
QC_API qc_status qc_study_run(const qc_study_config* config, qc_progress_fn progress, void* user, qc_study** out);
QC_API size_t qc_study_num_rows(const qc_study* s);
QC_API qc_status qc_study_row_get(const qc_study* s, size_t i, qc_study_row* out);
/* Rate of column "l2", "curl", "curl2", "v_norm" or "w_norm" between rows i-1 and i; NaN for i = 0. */
QC_API qc_status qc_study_rate(const qc_study* s, const char* column, size_t i, double* out);
/* Formatted table; release with qc_string_free. */
QC_API qc_status qc_study_format(const qc_study* s, qc_format format, char** out);
QC_API qc_status qc_study_write(const qc_study* s, qc_format format, const char* path);
QC_API void qc_study_destroy(qc_study* s);

QC_API void qc_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
