#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "quadcurl/quadcurl.h"

TEST(CApi, StatusStringsAndSupport) {
  EXPECT_STREQ(qc_status_string(QC_OK), "ok");
  EXPECT_STREQ(qc_status_string(QC_ERR_SOLVER), "solver failure");
  EXPECT_EQ(qc_is_supported(QC_FAMILY_NEW, 4, QC_SHAPE_TRIANGLE), 1);
  EXPECT_EQ(qc_is_supported(QC_FAMILY_NEW, 4, QC_SHAPE_RECTANGLE), 0);
  EXPECT_EQ(qc_is_supported(static_cast<qc_family>(9), 2, QC_SHAPE_TRIANGLE), 0);
  EXPECT_FALSE(std::string(qc_version()).empty());
}

TEST(CApi, ReferenceElement) {
  qc_element* e = nullptr;
  ASSERT_EQ(qc_element_create_reference(QC_FAMILY_NEW, 2, QC_SHAPE_TRIANGLE, &e), QC_OK);
  EXPECT_EQ(qc_element_num_dofs(e), 6u);
  double v[2], c, cc[2];
  ASSERT_EQ(qc_element_eval(e, 0, 0.25, 0.25, v, &c, cc), QC_OK);
  EXPECT_TRUE(std::isfinite(v[0]) && std::isfinite(c));
  // Vertex-curl shape function 0 has curl 1 at vertex 0 and 0 at the others.
  ASSERT_EQ(qc_element_eval(e, 0, 0.0, 0.0, nullptr, &c, nullptr), QC_OK);
  EXPECT_NEAR(c, 1.0, 1e-13);
  ASSERT_EQ(qc_element_eval(e, 0, 1.0, 0.0, nullptr, &c, nullptr), QC_OK);
  EXPECT_NEAR(c, 0.0, 1e-13);
  EXPECT_EQ(qc_element_eval(e, 6, 0, 0, v, nullptr, nullptr), QC_ERR_INVALID_ARGUMENT);
  EXPECT_FALSE(std::string(qc_last_error_message()).empty());
  qc_element_destroy(e);

  EXPECT_EQ(qc_element_create_reference(QC_FAMILY_MID, 4, QC_SHAPE_RECTANGLE, &e), QC_ERR_UNSUPPORTED);
  EXPECT_EQ(e, nullptr);
  EXPECT_EQ(qc_element_create_reference(QC_FAMILY_MID, 2, QC_SHAPE_RECTANGLE, nullptr), QC_ERR_INVALID_ARGUMENT);
  qc_element_destroy(nullptr);
}

TEST(CApi, Checks) {
  qc_check_options opt = qc_check_options_default();
  opt.random_cells = 2;
  opt.samples = 3;
  for (qc_check c : {QC_CHECK_UNISOLVENCE, QC_CHECK_EXACTNESS, QC_CHECK_COMMUTING}) {
    qc_report* r = nullptr;
    ASSERT_EQ(qc_check_run(c, QC_FAMILY_MID, 2, QC_SHAPE_RECTANGLE, &opt, &r), QC_OK) << qc_last_error_message();
    EXPECT_EQ(qc_report_passed(r), 1) << qc_report_text(r);
    ASSERT_GT(qc_report_num_records(r), 0u);
    const char *k = nullptr, *v = nullptr;
    EXPECT_EQ(qc_report_record(r, 0, &k, &v), QC_OK);
    EXPECT_NE(k, nullptr);
    EXPECT_EQ(qc_report_record(r, 100000, &k, &v), QC_ERR_INVALID_ARGUMENT);
    qc_report_destroy(r);
  }
  qc_report* r = nullptr;
  EXPECT_EQ(qc_check_run(QC_CHECK_UNISOLVENCE, QC_FAMILY_NEW, 4, QC_SHAPE_RECTANGLE, &opt, &r), QC_ERR_UNSUPPORTED);
  const int bad[] = {0};
  opt.ns = bad;
  opt.num_ns = 1;
  EXPECT_EQ(qc_check_run(QC_CHECK_EXACTNESS, QC_FAMILY_NEW, 2, QC_SHAPE_RECTANGLE, &opt, &r),
            QC_ERR_INVALID_ARGUMENT);
  ASSERT_EQ(qc_check_run(QC_CHECK_APPENDIX, QC_FAMILY_NEW, 2, QC_SHAPE_RECTANGLE, nullptr, &r), QC_OK);
  EXPECT_EQ(qc_report_passed(r), 1) << qc_report_text(r);
  qc_report_destroy(r);
}

namespace {

void count_rows(const qc_study_row*, void* user) { ++*static_cast<int*>(user); }

}  // namespace

TEST(CApi, Study) {
  qc_study_config cfg = qc_study_config_default();
  const int ns[] = {4, 8};
  cfg.ns = ns;
  cfg.num_ns = 2;
  int calls = 0;
  qc_study* s = nullptr;
  ASSERT_EQ(qc_study_run(&cfg, count_rows, &calls, &s), QC_OK) << qc_last_error_message();
  EXPECT_EQ(calls, 2);
  ASSERT_EQ(qc_study_num_rows(s), 2u);
  qc_study_row row;
  ASSERT_EQ(qc_study_row_get(s, 1, &row), QC_OK);
  EXPECT_EQ(row.n, 8);
  EXPECT_EQ(row.has_discrete, 1);
  EXPECT_GT(row.l2, 0.0);
  EXPECT_LE(row.residual, 1e-10);
  double rate = 0;
  ASSERT_EQ(qc_study_rate(s, "l2", 1, &rate), QC_OK);
  EXPECT_TRUE(std::isfinite(rate));
  EXPECT_EQ(qc_study_rate(s, "nope", 1, &rate), QC_ERR_INVALID_ARGUMENT);
  char* text = nullptr;
  ASSERT_EQ(qc_study_format(s, QC_FORMAT_CSV, &text), QC_OK);
  EXPECT_EQ(std::string(text).rfind("h,l2,l2_rate,curl,curl_rate,curl2,curl2_rate,v_norm,w_norm\n", 0), 0u);
  qc_string_free(text);

  const std::string path = ::testing::TempDir() + "qc_study.md";
  ASSERT_EQ(qc_study_write(s, QC_FORMAT_MARKDOWN, path.c_str()), QC_OK);
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_NE(ss.str().find("| 1/8 |"), std::string::npos);
  std::remove(path.c_str());
  EXPECT_EQ(qc_study_write(s, QC_FORMAT_CSV, "/nonexistent-dir/x.csv"), QC_ERR_IO);
  qc_study_destroy(s);

  cfg.quad_order = 3;
  EXPECT_EQ(qc_study_run(&cfg, nullptr, nullptr, &s), QC_ERR_CONFIG);
  EXPECT_NE(std::string(qc_last_error_message()).find("h = 1/4"), std::string::npos);
  cfg.quad_order = 12;
  cfg.k = 4;
  EXPECT_EQ(qc_study_run(&cfg, nullptr, nullptr, &s), QC_ERR_UNSUPPORTED);
  EXPECT_EQ(qc_study_run(nullptr, nullptr, nullptr, &s), QC_ERR_INVALID_ARGUMENT);
}
