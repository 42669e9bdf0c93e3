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


#ifndef SSGC_TRACE_HPP_
#define SSGC_TRACE_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace ssgc {

struct TraceEvent {
  std::uint64_t step = 0;
  std::int64_t p = -1;  // -1 for system events
  std::string kind;
  nlohmann::json data = nlohmann::json::object();
};

/// Header line, one line per event, final snapshot line.
struct Trace {
  nlohmann::json header = nlohmann::json::object();
  std::vector<TraceEvent> events;
  nlohmann::json snapshot = nlohmann::json::object();

  std::string to_jsonl() const;
  /// Throws std::runtime_error on malformed input.
  static Trace from_jsonl(std::string_view text);

  void save(const std::string& path) const;
  static Trace load(const std::string& path);
};

}  // namespace ssgc

#endif  // SSGC_TRACE_HPP_
