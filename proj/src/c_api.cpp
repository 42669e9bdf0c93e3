/*
 * Copyright 2026 The ssgc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "ssgc/ssgc.h"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "ssgc/checkers.hpp"
#include "ssgc/label.hpp"
#include "ssgc/scenario.hpp"
#include "ssgc/simulator.hpp"
#include "ssgc/trace.hpp"

struct ssgc_scenario {
  ssgc::ScenarioConfig cfg;
};
struct ssgc_trace {
  ssgc::Trace trace;
};
struct ssgc_verdict {
  ssgc::Verdict v;
};

namespace {

thread_local std::string g_last_error;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ssgc::Trace parse_trace(std::string_view text) {
  try {
    return ssgc::Trace::from_jsonl(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  } catch (const std::runtime_error& e) {
    throw ParseError(e.what());
  }
}

ssgc_status fail(ssgc_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <typename F>
ssgc_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return SSGC_OK;
  } catch (const ssgc::ConfigError& e) {
    return fail(SSGC_E_CONFIG, e.what());
  } catch (const ssgc::UnknownProperty& e) {
    return fail(SSGC_E_UNKNOWN_PROPERTY, e.what());
  } catch (const IoError& e) {
    return fail(SSGC_E_IO, e.what());
  } catch (const ParseError& e) {
    return fail(SSGC_E_PARSE, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(SSGC_E_PARSE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(SSGC_E_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(SSGC_E_INTERNAL, e.what());
  } catch (...) {
    return fail(SSGC_E_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string read_file(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(std::string("cannot open ") + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

#define SSGC_REQUIRE(cond)                                              \
  do {                                                                  \
    if (!(cond))                                                        \
      return fail(SSGC_E_INVALID_ARGUMENT, "null argument: " #cond);    \
  } while (0)

}  // namespace

extern "C" {

const char* ssgc_last_error(void) { return g_last_error.c_str(); }

const char* ssgc_status_string(ssgc_status s) {
  switch (s) {
    case SSGC_OK: return "ok";
    case SSGC_E_INVALID_ARGUMENT: return "invalid argument";
    case SSGC_E_PARSE: return "parse error";
    case SSGC_E_CONFIG: return "invalid configuration";
    case SSGC_E_UNKNOWN_PROPERTY: return "unknown property";
    case SSGC_E_IO: return "i/o error";
    case SSGC_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

ssgc_status ssgc_scenario_from_json(const char* json, ssgc_scenario** out) {
  SSGC_REQUIRE(json && out);
  return guarded([&] {
    auto cfg = ssgc::scenario_from_json(nlohmann::json::parse(json));
    *out = new ssgc_scenario{std::move(cfg)};
  });
}

ssgc_status ssgc_scenario_load(const char* path, ssgc_scenario** out) {
  SSGC_REQUIRE(path && out);
  return guarded([&] {
    auto cfg = ssgc::scenario_from_json(nlohmann::json::parse(read_file(path)));
    *out = new ssgc_scenario{std::move(cfg)};
  });
}

ssgc_status ssgc_scenario_set_seed(ssgc_scenario* s, uint64_t seed) {
  SSGC_REQUIRE(s);
  s->cfg.seed = seed;
  return SSGC_OK;
}

ssgc_status ssgc_scenario_set_steps(ssgc_scenario* s, uint64_t steps) {
  SSGC_REQUIRE(s);
  return guarded([&] {
    ssgc::ScenarioConfig c = s->cfg;
    c.steps = steps;
    c.validate();
    s->cfg = std::move(c);
  });
}

ssgc_status ssgc_scenario_to_json(const ssgc_scenario* s, char** out) {
  SSGC_REQUIRE(s && out);
  return guarded([&] { *out = dup_string(ssgc::scenario_to_json(s->cfg).dump()); });
}

void ssgc_scenario_free(ssgc_scenario* s) { delete s; }

ssgc_status ssgc_run(const ssgc_scenario* s, ssgc_trace** out) {
  SSGC_REQUIRE(s && out);
  return guarded([&] { *out = new ssgc_trace{ssgc::run_scenario(s->cfg)}; });
}

ssgc_status ssgc_trace_load(const char* path, ssgc_trace** out) {
  SSGC_REQUIRE(path && out);
  return guarded([&] {
    *out = new ssgc_trace{parse_trace(read_file(path))};
  });
}

ssgc_status ssgc_trace_from_jsonl(const char* text, ssgc_trace** out) {
  SSGC_REQUIRE(text && out);
  return guarded([&] {
    *out = new ssgc_trace{parse_trace(text)};
  });
}

ssgc_status ssgc_trace_save(const ssgc_trace* t, const char* path) {
  SSGC_REQUIRE(t && path);
  return guarded([&] {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError(std::string("cannot write ") + path);
    f << t->trace.to_jsonl();
    if (!f) throw IoError(std::string("write failed: ") + path);
  });
}

ssgc_status ssgc_trace_to_jsonl(const ssgc_trace* t, char** out) {
  SSGC_REQUIRE(t && out);
  return guarded([&] { *out = dup_string(t->trace.to_jsonl()); });
}

size_t ssgc_trace_event_count(const ssgc_trace* t) {
  return t ? t->trace.events.size() : 0;
}

void ssgc_trace_free(ssgc_trace* t) { delete t; }

size_t ssgc_property_count(void) { return ssgc::property_names().size(); }

const char* ssgc_property_name(size_t i) {
  const auto& names = ssgc::property_names();
  return i < names.size() ? names[i].c_str() : nullptr;
}

ssgc_status ssgc_trace_properties(const ssgc_trace* t, char** out) {
  SSGC_REQUIRE(t && out);
  return guarded([&] {
    std::string joined;
    for (const auto& p : ssgc::properties_for(t->trace)) {
      if (!joined.empty()) joined += ',';
      joined += p;
    }
    *out = dup_string(joined);
  });
}

ssgc_status ssgc_check(const ssgc_trace* t, const char* property,
                       ssgc_verdict** out) {
  SSGC_REQUIRE(t && property && out);
  return guarded([&] { *out = new ssgc_verdict{ssgc::check(t->trace, property)}; });
}

int ssgc_verdict_passed(const ssgc_verdict* v) { return v && v->v.passed; }

int ssgc_verdict_step(const ssgc_verdict* v, uint64_t* step) {
  if (!v || !v->v.step) return 0;
  if (step) *step = *v->v.step;
  return 1;
}

const char* ssgc_verdict_property(const ssgc_verdict* v) {
  return v ? v->v.property.c_str() : "";
}

const char* ssgc_verdict_diagnostics(const ssgc_verdict* v) {
  return v ? v->v.diagnostics.c_str() : "";
}

void ssgc_verdict_free(ssgc_verdict* v) { delete v; }

ssgc_status ssgc_label_compare(uint32_t k, const char* a, const char* b,
                               int* ordering) {
  SSGC_REQUIRE(a && b && ordering);
  return guarded([&] {
    const ssgc::SchemeParams params{k};
    *ordering = static_cast<int>(ssgc::cmp_label(ssgc::parse_label(params, a),
                                                 ssgc::parse_label(params, b)));
  });
}

ssgc_status ssgc_label_next(uint32_t k, uint32_t creator,
                            const char* const* inputs, size_t count,
                            char** out) {
  SSGC_REQUIRE(out && (inputs || count == 0));
  return guarded([&] {
    const ssgc::SchemeParams params{k};
    std::vector<ssgc::Label> labels;
    for (size_t i = 0; i < count; ++i) {
      if (!inputs[i]) throw std::invalid_argument("null label");
      labels.push_back(ssgc::parse_label(params, inputs[i]));
    }
    *out = dup_string(ssgc::render(ssgc::next_label(params, creator, labels)));
  });
}

void ssgc_string_free(char* s) { std::free(s); }

}  // extern "C"
