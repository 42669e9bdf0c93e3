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


#ifndef SSGC_VS_HPP_
#define SSGC_VS_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ssgc/counter.hpp"
#include "ssgc/failure_detector.hpp"

namespace ssgc {

struct View {
  std::optional<Counter> id;
  std::set<ProcessorId> set;
  friend bool operator==(const View& a, const View& b) {
    return a.id == b.id && a.set == b.set;
  }
};

/// Compact view identity for traces: the rendered id or "none".
std::string view_key(const View& v);

enum class VsStatus { Multicast, Propose, Install };
const char* to_string(VsStatus s);

/// Hash-chained automaton state; `count` is the number of applied rounds.
struct AutomatonState {
  std::uint64_t hash = 0;
  std::uint64_t count = 0;
  friend bool operator==(const AutomatonState&,
                         const AutomatonState&) = default;
};

using MsgArray = std::vector<std::optional<std::string>>;

/// Deterministic step: chains every slot in ascending id order.
AutomatonState apply_step(const AutomatonState& s, const MsgArray& msg);

struct Replica {
  View view;
  VsStatus status = VsStatus::Multicast;
  std::uint64_t rnd = 0;
  std::optional<AutomatonState> state;  // empty when elided by PCE
  MsgArray msg;
  std::optional<std::string> input;
  View prop_view;
  bool no_crd = true;
  std::set<ProcessorId> fd;
};

using ReplicaPtr = std::shared_ptr<const Replica>;

struct VsParams {
  std::uint32_t n = 1;
  std::uint64_t pce = 8;
  std::uint64_t round_limit = std::uint64_t{1} << 62;
};

struct VsEvent {
  enum class Kind { Propose, Install, Deliver, Apply };
  Kind kind = Kind::Propose;
  View view;
  std::uint64_t rnd = 0;
  MsgArray msg;
  std::uint64_t hash = 0;
  std::set<ProcessorId> fd;  // propose: the failure detector snapshot
};

/// Membership predicates, exposed for tests.
std::set<ProcessorId> seem_crd(const std::vector<Replica>& rep,
                               const std::vector<FdEntry>& fdin,
                               std::uint32_t n);
std::set<ProcessorId> val_crd(const std::set<ProcessorId>& seem,
                              const std::vector<Replica>& rep);

/// Index of the most advanced member with a state, or none.
std::optional<ProcessorId> most_advanced(const std::vector<Replica>& rep,
                                         const std::set<ProcessorId>& members,
                                         ProcessorId coordinator);

/**
 * Replication state machine for one processor. The caller supplies the
 * failure detector output and the counter service.
 */
class VsState {
 public:
  VsState(const VsParams& params, ProcessorId self);

  ProcessorId self() const { return self_; }
  const VsParams& params() const { return params_; }
  const Replica& own() const { return rep_[self_]; }
  std::vector<Replica>& rep() { return rep_; }
  const std::vector<Replica>& rep() const { return rep_; }

  /// Coordinator this processor reports to peers.
  std::optional<ProcessorId> crd() const { return crd_; }

  void on_message(ProcessorId from, const Replica& m);

  /// One iteration. Returns the replica to send and its recipients.
  struct Outgoing {
    ReplicaPtr msg;
    std::set<ProcessorId> to;
  };
  Outgoing iterate(const std::vector<FdEntry>& fdin);

  /// A counter for a new view identifier is wanted and none is in flight.
  bool wants_counter() const { return want_inc_ && !inc_pending_; }
  void counter_started() { inc_pending_ = true; }
  void counter_done(const Counter& c);
  /// Forgets a ready identifier whose label the counter layer has left.
  void drop_stale_id(const Label& current);

  std::vector<VsEvent> take_events();

  // Exposed for arbitrary initial configurations.
  std::uint64_t fetched = 0;
  std::optional<ProcessorId> crd_;

 private:
  bool propose_guard(const std::set<ProcessorId>& fd,
                     const std::set<ProcessorId>& valid) const;
  bool round_end() const;
  void coordinator_step();
  void follower_step(ProcessorId l);
  std::string fetch();
  void note_apply(const View& v, std::uint64_t rnd, const MsgArray* msg,
                  const AutomatonState& s);

  VsParams params_;
  ProcessorId self_;
  std::vector<Replica> rep_;
  bool want_inc_ = false;
  bool inc_pending_ = false;
  std::optional<Counter> ready_id_;
  std::optional<std::pair<std::string, std::uint64_t>> last_applied_;
  std::vector<VsEvent> events_;
};

}  // namespace ssgc

#endif  // SSGC_VS_HPP_
