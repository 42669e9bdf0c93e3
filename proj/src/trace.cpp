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


#include "ssgc/trace.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ssgc {

using nlohmann::json;

std::string Trace::to_jsonl() const {
  std::string out;
  json h = header;
  h["type"] = "header";
  out += h.dump();
  out += '\n';
  for (const TraceEvent& e : events) {
    json j{{"type", "event"}, {"step", e.step}, {"p", e.p}, {"kind", e.kind},
           {"data", e.data}};
    out += j.dump();
    out += '\n';
  }
  json s = snapshot;
  s["type"] = "snapshot";
  out += s.dump();
  out += '\n';
  return out;
}

Trace Trace::from_jsonl(std::string_view text) {
  Trace t;
  bool have_header = false, have_snapshot = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw std::runtime_error("trace line " + std::to_string(line_no) +
                               ": " + e.what());
    }
    const std::string type = j.value("type", "");
    j.erase("type");
    if (type == "header") {
      t.header = std::move(j);
      have_header = true;
    } else if (type == "event") {
      TraceEvent e;
      try {
        e.step = j.at("step").get<std::uint64_t>();
        e.p = j.at("p").get<std::int64_t>();
        e.kind = j.at("kind").get<std::string>();
        e.data = j.value("data", json::object());
      } catch (const json::exception& ex) {
        throw std::runtime_error("trace line " + std::to_string(line_no) +
                                 ": " + ex.what());
      }
      t.events.push_back(std::move(e));
    } else if (type == "snapshot") {
      t.snapshot = std::move(j);
      have_snapshot = true;
    } else {
      throw std::runtime_error("trace line " + std::to_string(line_no) +
                               ": unknown record type");
    }
  }
  if (!have_header || !have_snapshot)
    throw std::runtime_error("trace is missing its header or snapshot");
  return t;
}

void Trace::save(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << to_jsonl();
  if (!f) throw std::runtime_error("write failed: " + path);
}

Trace Trace::load(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return from_jsonl(ss.str());
}

}  // namespace ssgc
