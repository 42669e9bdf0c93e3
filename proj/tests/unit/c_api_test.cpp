#include <doctest.h>

#include <cstring>
#include <string>

#include "ssgc/ssgc.h"

TEST_CASE("C API: run and check") {
  ssgc_scenario* s = nullptr;
  REQUIRE(ssgc_scenario_from_json(R"({"n": 3, "steps": 5000, "seed": 2})", &s) ==
          SSGC_OK);
  REQUIRE(ssgc_scenario_set_seed(s, 3) == SSGC_OK);
  ssgc_trace* t = nullptr;
  REQUIRE(ssgc_run(s, &t) == SSGC_OK);
  CHECK(ssgc_trace_event_count(t) > 0);

  ssgc_verdict* v = nullptr;
  REQUIRE(ssgc_check(t, "label-convergence", &v) == SSGC_OK);
  CHECK(ssgc_verdict_passed(v));
  CHECK(std::string(ssgc_verdict_property(v)) == "label-convergence");
  std::uint64_t step = 0;
  CHECK(ssgc_verdict_step(v, &step) == 1);
  ssgc_verdict_free(v);

  char* text = nullptr;
  REQUIRE(ssgc_trace_to_jsonl(t, &text) == SSGC_OK);
  ssgc_trace* back = nullptr;
  REQUIRE(ssgc_trace_from_jsonl(text, &back) == SSGC_OK);
  CHECK(ssgc_trace_event_count(back) == ssgc_trace_event_count(t));
  ssgc_string_free(text);
  ssgc_trace_free(back);

  CHECK(ssgc_check(t, "bogus", &v) == SSGC_E_UNKNOWN_PROPERTY);
  CHECK(std::strlen(ssgc_last_error()) > 0);
  ssgc_trace_free(t);
  ssgc_scenario_free(s);
}

TEST_CASE("C API: errors") {
  ssgc_scenario* s = nullptr;
  CHECK(ssgc_scenario_from_json("{", &s) == SSGC_E_PARSE);
  CHECK(ssgc_scenario_from_json(R"({"n": 0})", &s) == SSGC_E_CONFIG);
  CHECK(ssgc_scenario_load("/nonexistent/x.json", &s) == SSGC_E_IO);
  CHECK(ssgc_run(nullptr, nullptr) == SSGC_E_INVALID_ARGUMENT);
  CHECK(std::string(ssgc_status_string(SSGC_E_CONFIG)) == "invalid configuration");
}

TEST_CASE("C API: labels") {
  int o = -1;
  REQUIRE(ssgc_label_compare(2, "1:2:{1,3}", "2:2:{1,3}", &o) == SSGC_OK);
  CHECK(o == SSGC_LESS);
  REQUIRE(ssgc_label_compare(2, "1:2:{4,5}", "1:4:{2,3}", &o) == SSGC_OK);
  CHECK(o == SSGC_INCOMPARABLE);
  const char* in[] = {"3:3:{1,2}"};
  char* out = nullptr;
  REQUIRE(ssgc_label_next(2, 3, in, 1, &out) == SSGC_OK);
  CHECK(std::string(out) == "3:4:{1,3}");
  ssgc_string_free(out);
  CHECK(ssgc_label_compare(2, "junk", "1:2:{1,3}", &o) == SSGC_E_INVALID_ARGUMENT);
}
