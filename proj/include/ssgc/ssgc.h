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

#ifndef SSGC_H_
#define SSGC_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SSGC_API __declspec(dllexport)
#else
#define SSGC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ssgc_status {
  SSGC_OK = 0,
  SSGC_E_INVALID_ARGUMENT = 1,
  SSGC_E_PARSE = 2,
  SSGC_E_CONFIG = 3,
  SSGC_E_UNKNOWN_PROPERTY = 4,
  SSGC_E_IO = 5,
  SSGC_E_INTERNAL = 6
} ssgc_status;

typedef struct ssgc_scenario ssgc_scenario;
typedef struct ssgc_trace ssgc_trace;
typedef struct ssgc_verdict ssgc_verdict;

/* Message for the last failing call on this thread; never NULL. */
SSGC_API const char* ssgc_last_error(void);
SSGC_API const char* ssgc_status_string(ssgc_status s);

/* Scenarios. */
SSGC_API ssgc_status ssgc_scenario_from_json(const char* json,
                                             ssgc_scenario** out);
SSGC_API ssgc_status ssgc_scenario_load(const char* path, ssgc_scenario** out);
SSGC_API ssgc_status ssgc_scenario_set_seed(ssgc_scenario* s, uint64_t seed);
SSGC_API ssgc_status ssgc_scenario_set_steps(ssgc_scenario* s, uint64_t steps);
/* Canonical JSON of the scenario; release with ssgc_string_free. */
SSGC_API ssgc_status ssgc_scenario_to_json(const ssgc_scenario* s, char** out);
SSGC_API void ssgc_scenario_free(ssgc_scenario* s);

/* Simulation. */
SSGC_API ssgc_status ssgc_run(const ssgc_scenario* s, ssgc_trace** out);

/* Traces. */
SSGC_API ssgc_status ssgc_trace_load(const char* path, ssgc_trace** out);
SSGC_API ssgc_status ssgc_trace_from_jsonl(const char* text, ssgc_trace** out);
SSGC_API ssgc_status ssgc_trace_save(const ssgc_trace* t, const char* path);
SSGC_API ssgc_status ssgc_trace_to_jsonl(const ssgc_trace* t, char** out);
SSGC_API size_t ssgc_trace_event_count(const ssgc_trace* t);
SSGC_API void ssgc_trace_free(ssgc_trace* t);

/* Properties. Names are static strings. */
SSGC_API size_t ssgc_property_count(void);
SSGC_API const char* ssgc_property_name(size_t i);
/* Properties relevant to the trace's workload, comma separated. */
SSGC_API ssgc_status ssgc_trace_properties(const ssgc_trace* t, char** out);

SSGC_API ssgc_status ssgc_check(const ssgc_trace* t, const char* property,
                                ssgc_verdict** out);
SSGC_API int ssgc_verdict_passed(const ssgc_verdict* v);
/* Returns 0 when the verdict carries no step. */
SSGC_API int ssgc_verdict_step(const ssgc_verdict* v, uint64_t* step);
SSGC_API const char* ssgc_verdict_property(const ssgc_verdict* v);
SSGC_API const char* ssgc_verdict_diagnostics(const ssgc_verdict* v);
SSGC_API void ssgc_verdict_free(ssgc_verdict* v);

/* Labels in text form `creator:sting:{a1,...}`. */
SSGC_API ssgc_status ssgc_label_compare(uint32_t k, const char* a,
                                        const char* b, int* ordering);
SSGC_API ssgc_status ssgc_label_next(uint32_t k, uint32_t creator,
                                     const char* const* inputs, size_t count,
                                     char** out);

/* ordering values written by ssgc_label_compare */
#define SSGC_LESS 0
#define SSGC_GREATER 1
#define SSGC_EQUAL 2
#define SSGC_INCOMPARABLE 3

SSGC_API void ssgc_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* SSGC_H_ */
