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


#ifndef SSGC_SIMULATOR_HPP_
#define SSGC_SIMULATOR_HPP_

#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ssgc/counter.hpp"
#include "ssgc/failure_detector.hpp"
#include "ssgc/labeling.hpp"
#include "ssgc/link.hpp"
#include "ssgc/scenario.hpp"
#include "ssgc/trace.hpp"
#include "ssgc/vs.hpp"

namespace ssgc {

/// Everything one token carries between two processors.
struct Envelope {
  std::optional<ProcessorId> crd;
  std::optional<std::pair<LabelPair, LabelPair>> labels;
  std::optional<std::pair<CounterPair, CounterPair>> counters;
  std::vector<QuorumMsg> quorum;
  ReplicaPtr vs;
  std::optional<std::string> data;
};

struct Processor {
  Processor(ProcessorId id, const ScenarioConfig& cfg,
            const ProtocolParams& params);

  ProcessorId id;
  bool active = true;
  std::optional<LabelingState> labels;
  std::optional<CounterState> counters;
  std::optional<VsState> vs;
  FailureDetector fd;
  std::vector<std::optional<LinkEndpoint>> links;  // indexed by peer
  std::vector<std::vector<QuorumMsg>> outbox;       // quorum replies
  std::vector<ReplicaPtr> vs_out;
  std::vector<std::uint64_t> data_seq;

  std::uint32_t ops_started = 0;
  bool vs_owns_op = false;
  std::set<ProcessorId> trusted;
  std::deque<RegisterOp> own_ops;
};

/**
 * Seeded interleaving of atomic steps. Each step either acts on one non-empty
 * channel (deliver, drop or duplicate its head) or lets one active processor
 * retransmit on a link or run its workload iteration.
 */
class Simulator {
 public:
  explicit Simulator(ScenarioConfig cfg);

  const ScenarioConfig& config() const { return cfg_; }
  const ProtocolParams& params() const { return params_; }
  std::uint64_t now() const { return step_; }

  std::vector<Processor>& processors() { return procs_; }
  const std::vector<Processor>& processors() const { return procs_; }
  Channel& channel(ProcessorId from, ProcessorId to) {
    return chans_[from * cfg_.n + to];
  }
  std::mt19937_64& rng() { return rng_; }

  /// Returns false once the step budget is spent.
  bool step();
  void run();

  /// Finalizes the snapshot and hands over the trace.
  Trace finish();

  /// Envelope `p` would send to `to` right now. Drains pending outputs.
  Payload build_envelope(Processor& p, ProcessorId to);

 private:
  void emit(std::int64_t p, std::string kind,
            nlohmann::json data = nlohmann::json::object());
  double uniform();
  void apply_crashes();
  std::optional<ProcessorId> resolve_role(const std::string& role);
  void channel_action(ProcessorId from, ProcessorId to);
  void deliver(ProcessorId from, ProcessorId to, const Packet& pkt);
  void on_token(Processor& p, ProcessorId from, const Payload& env);
  void send_packets(ProcessorId from, ProcessorId to,
                    const std::vector<Packet>& pkts);
  void processor_action(Processor& p);
  void workload_tick(Processor& p);
  void register_tick(Processor& p);
  void drain(Processor& p);
  void note_fd(Processor& p);
  nlohmann::json snapshot() const;

  ScenarioConfig cfg_;
  ProtocolParams params_;
  std::mt19937_64 rng_;
  std::uint64_t step_ = 0;
  std::vector<Processor> procs_;
  std::vector<Channel> chans_;
  std::vector<bool> crash_done_;
  std::deque<RegisterOp> global_ops_;
  bool global_op_running_ = false;
  std::vector<std::optional<std::string>> expect_;  // by processor, pending
  Trace trace_;
};

Trace run_scenario(const ScenarioConfig& cfg);

nlohmann::json counter_json(const Counter& c);

}  // namespace ssgc

#endif  // SSGC_SIMULATOR_HPP_
