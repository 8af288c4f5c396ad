#include <gtest/gtest.h>

#include <string>

#include "crystalkit/crystalkit.h"

namespace {

const char* kTwoCycle = R"({"p": 2, "cycles": [[1, 2]], "epsilon": [0, 1]})";

std::string take(char* s) {
  std::string out = s ? s : "";
  ck_string_free(s);
  return out;
}

std::string report_text(ck_report* rep, ck_format fmt = CK_FORMAT_TSV) {
  char* text = nullptr;
  EXPECT_EQ(ck_report_text(rep, fmt, &text), CK_OK);
  return take(text);
}

}  // namespace

TEST(CApi, StatusNames) {
  const char* names[] = {"Ok",         "NotPrime",        "ReducibleModulus", "IncompatibleFields",
                         "MismatchedStructure", "NotSingular", "OracleMismatch", "NotACycle",
                         "BadShape",   "FieldTooSmall",   "BadR",             "InconsistentInput",
                         "RankDeficientLie", "PrecisionLimit", "ParseError",   "UsageError"};
  for (int s = 0; s <= 15; ++s) EXPECT_STREQ(ck_status_name(static_cast<ck_status>(s)), names[s]);
  EXPECT_STREQ(ck_status_name(CK_INTERNAL_ERROR), "InternalError");
  EXPECT_STRNE(ck_version(), "");
}

TEST(CApi, ModuleRoundTripAndNewton) {
  ck_module* m = nullptr;
  ASSERT_EQ(ck_module_parse(kTwoCycle, &m), CK_OK);
  EXPECT_STREQ(ck_last_error(), "");
  char* json = nullptr;
  ASSERT_EQ(ck_module_to_json(m, &json), CK_OK);
  ck_module* again = nullptr;
  ASSERT_EQ(ck_module_parse(json, &again), CK_OK);
  ck_string_free(json);
  ck_report* rep = nullptr;
  ASSERT_EQ(ck_run_newton(again, &rep), CK_OK);
  EXPECT_EQ(report_text(rep), "slope\tmult\n1/2\t2\n");
  EXPECT_EQ(ck_report_exit_status(rep), 0);
  ck_report_free(rep);
  ck_module_free(again);
  ck_module_free(m);
}

TEST(CApi, ErrorsCarryMessages) {
  ck_module* m = nullptr;
  EXPECT_EQ(ck_module_parse("{", &m), CK_PARSE_ERROR);
  EXPECT_EQ(m, nullptr);
  EXPECT_STRNE(ck_last_error(), "");
  EXPECT_EQ(ck_module_parse(R"({"p": 6, "cycles": [[1]], "epsilon": [0]})", &m), CK_NOT_PRIME);
  EXPECT_EQ(ck_module_parse(nullptr, &m), CK_USAGE_ERROR);
  EXPECT_EQ(ck_run_newton(nullptr, nullptr), CK_USAGE_ERROR);
  ck_report* rep = nullptr;
  EXPECT_EQ(ck_run_example43(2, 0, 0, 1, 1, &rep), CK_BAD_SHAPE);
  EXPECT_EQ(rep, nullptr);
  ck_module_free(nullptr);
  ck_report_free(nullptr);
  ck_string_free(nullptr);
}

TEST(CApi, SolveAndGeometricCount) {
  ck_system* s = nullptr;
  ASSERT_EQ(ck_system_parse(R"({"p": 3, "degree": 1, "nvars": 2, "B": [["0", "0"], ["0", "0"]], "C": ["1", "2"]})", &s),
            CK_OK);
  unsigned m = 99;
  ASSERT_EQ(ck_system_geometric_count(s, &m), CK_OK);
  EXPECT_EQ(m, 0u);
  ck_report* rep = nullptr;
  ASSERT_EQ(ck_run_solve(s, 1, &rep), CK_OK);
  const std::string text = report_text(rep);
  EXPECT_EQ(text.rfind("x1\tx2\n1\t2\n", 0), 0u);
  ck_report_free(rep);
  rep = nullptr;
  EXPECT_EQ(ck_run_solve(s, 0, &rep), CK_BAD_SHAPE);
  EXPECT_EQ(rep, nullptr);
  char* json = nullptr;
  ASSERT_EQ(ck_system_to_json(s, &json), CK_OK);
  EXPECT_NE(take(json).find("\"nvars\": 2"), std::string::npos);
  ck_system_free(s);
}

TEST(CApi, ConnectionPipeline) {
  const char* text = R"({
    "p": 3, "degree": 1, "d_M": 2, "d": 1, "epsilon": [0, 1],
    "a_bar": [["1", "2"], ["0", "1"]],
    "da_bar": [[["1"], ["2"]], [["0"], ["1"]]],
    "phi_images": [["1", "1"], ["0", "1"]],
    "z_point": ["2"]
  })";
  ck_connection* c = nullptr;
  ASSERT_EQ(ck_connection_parse(text, &c), CK_OK);
  ck_report* rep = nullptr;
  char* sys_json = nullptr;
  ASSERT_EQ(ck_run_connection(c, &rep, &sys_json), CK_OK);
  ck_system* s = nullptr;
  ASSERT_EQ(ck_system_parse(sys_json, &s), CK_OK);
  ck_string_free(sys_json);
  unsigned m = 0;
  EXPECT_EQ(ck_system_geometric_count(s, &m), CK_OK);
  EXPECT_EQ(m, 1u);
  ck_system_free(s);
  ck_report_free(rep);
  char* back = nullptr;
  EXPECT_EQ(ck_connection_to_json(c, &back), CK_OK);
  ck_string_free(back);
  ck_connection_free(c);
}

TEST(CApi, OtherDrivers) {
  ck_module* m = nullptr;
  ASSERT_EQ(ck_module_parse(kTwoCycle, &m), CK_OK);
  ck_report* rep = nullptr;
  ASSERT_EQ(ck_run_valuations(m, 0, &rep), CK_OK);
  const std::string tsv = report_text(rep);
  EXPECT_NE(tsv.find("1/3"), std::string::npos);
  EXPECT_NE(tsv.find("1/6"), std::string::npos);
  EXPECT_EQ(report_text(rep, CK_FORMAT_JSON).front(), '{');
  ck_report_free(rep);
  ASSERT_EQ(ck_run_embed(m, 0, 2, 0, &rep), CK_OK);
  EXPECT_EQ(ck_report_exit_status(rep), 0);
  ck_report_free(rep);
  EXPECT_EQ(ck_run_embed(m, 0, 0, 3, &rep), CK_BAD_R);
  ck_module_free(m);
  ASSERT_EQ(ck_run_lubin_tate(3, 3, &rep), CK_OK);
  EXPECT_NE(report_text(rep).find("1/26"), std::string::npos);
  ck_report_free(rep);
  ASSERT_EQ(ck_run_example43(3, 0, 1, 1, 2, &rep), CK_OK);
  EXPECT_NE(report_text(rep).find("3/8"), std::string::npos);
  ck_report_free(rep);
}
