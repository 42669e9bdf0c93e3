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


#ifndef SSGC_SCENARIO_HPP_
#define SSGC_SCENARIO_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ssgc/counter.hpp"
#include "ssgc/labeling.hpp"

namespace ssgc {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Workload { Labels, Counters, Register, Vs, Link, Fd };
const char* to_string(Workload w);

struct CrashSpec {
  // A processor id, or a role resolved when the crash fires.
  std::variant<ProcessorId, std::string> who;
  std::uint64_t step = 0;
};

struct RegisterOp {
  ProcessorId p = 0;
  OpKind op = OpKind::Read;
  std::string value;
  std::optional<std::string> expect;
};

struct ScenarioConfig {
  std::uint32_t n = 3;
  std::uint32_t link_capacity = 2;
  std::uint64_t seed = 1;
  std::uint64_t steps = 1000000;
  Workload workload = Workload::Labels;
  bool arbitrary = false;

  std::vector<CrashSpec> crashes;
  double drop = 0.1;
  double duplicate = 0.1;
  double fairness_floor = 0.5;

  std::uint32_t fd_threshold = 0;  // 0 means 4n
  std::uint64_t pce = 8;
  Seqn exhaustion = Seqn{1} << 64;
  std::uint64_t round_limit = std::uint64_t{1} << 62;

  bool safe_queues = true;
  std::size_t own_queue_cap = 0;
  std::size_t other_queue_cap = 0;
  std::uint32_t k = 0;

  std::optional<std::vector<ProcessorId>> primary_majority;
  std::optional<ProcessorId> primary_leader;

  // counters workload
  std::vector<ProcessorId> writers;
  std::uint32_t ops_per_writer = 8;
  bool concurrent = true;

  // register workload
  std::vector<RegisterOp> register_ops;
  std::uint32_t random_register_ops = 0;

  // arbitrary initial state knobs
  bool exhaust_all = false;
  bool label_cycle = true;

  std::uint32_t fd_w() const { return fd_threshold ? fd_threshold : 4 * n; }
  /// Label pairs one packet can carry for this workload.
  std::uint32_t pairs_per_packet() const;
  /// Directed links times (capacity + 1 endpoint buffer) times pairs.
  std::uint64_t in_transit_pairs() const;
  ProtocolParams protocol_params() const;

  /// Throws ConfigError on out-of-range or inconsistent settings.
  void validate() const;
};

ScenarioConfig scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const ScenarioConfig& c);

}  // namespace ssgc

#endif  // SSGC_SCENARIO_HPP_
