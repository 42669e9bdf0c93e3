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


#ifndef SSGC_COUNTER_HPP_
#define SSGC_COUNTER_HPP_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "ssgc/labeling.hpp"

namespace ssgc {

using Seqn = unsigned __int128;

std::string seqn_to_string(Seqn v);
/// Throws std::invalid_argument on anything but a plain decimal number.
Seqn seqn_from_string(std::string_view text);

struct Counter {
  Label lbl;
  Seqn seqn = 0;
  ProcessorId wid = 0;

  friend bool operator==(const Counter& a, const Counter& b) {
    return a.seqn == b.seqn && a.wid == b.wid && a.lbl == b.lbl;
  }
};

LabelOrdering cmp_counter(const Counter& a, const Counter& b);

/// `creator:sting:#digest/seqn/wid`
std::string render_id(const Counter& c);

using CounterPair = CancelPair<Counter>;

struct ExhaustionThreshold {
  Seqn limit = Seqn{1} << 64;
};

inline bool exhausted(const CounterPair& p, const ExhaustionThreshold& t) {
  return p.value.seqn >= t.limit;
}

struct CounterTraits {
  using Value = Counter;
  static const Label& key(const Counter& c) { return c.lbl; }
  static LabelOrdering cmp(const Counter& a, const Counter& b) {
    return cmp_counter(a, b);
  }
  static Counter fresh(const Label& l, ProcessorId self) {
    return Counter{l, 0, self};
  }
  /// One pair per label: a canceled copy wins, otherwise the greater
  /// counter. The survivor moves to the front.
  static std::size_t store(BoundedQueue<CounterPair>& q, const CounterPair& p);
};

/// Majority quorums.
struct QuorumConfig {
  std::uint32_t n = 1;
  std::uint32_t size() const { return n / 2 + 1; }
};

// Quorum wire records. Nonces tie replies to the operation that asked.
struct QuorumRead {
  std::uint64_t nonce = 0;
  bool want_value = false;
};
struct ReadReply {
  std::uint64_t nonce = 0;
  CounterPair pair;
  std::optional<std::string> value;
};
struct QuorumWrite {
  std::uint64_t nonce = 0;
  Counter counter;
  std::optional<std::string> value;
};
struct WriteAck {
  std::uint64_t nonce = 0;
};
using QuorumMsg = std::variant<QuorumRead, ReadReply, QuorumWrite, WriteAck>;

enum class OpKind { Increment, Write, Read };
enum class OpPhase { Idle, Reading, Writing };

const char* to_string(OpKind k);

/// Progress of a client-side quorum operation, drained by the caller.
struct OpNotice {
  enum class Kind { Started, WriteStarted, Completed };
  Kind kind = Kind::Started;
  OpKind op = OpKind::Increment;
  std::uint64_t nonce = 0;
  std::optional<Counter> counter;     // written or returned counter
  std::optional<std::string> value;   // attached register value
};

/// Register slot: the greatest written counter and its value.
struct RegisterSlot {
  Counter counter;
  std::string value;
};

/**
 * Counter protocol state for one processor: diffusion storage, the
 * exhaustion rules and at most one pending quorum operation.
 */
class CounterState : public PairStore<CounterTraits> {
 public:
  CounterState(const ProtocolParams& params, ProcessorId self,
               ExhaustionThreshold threshold);

  const ExhaustionThreshold& threshold() const { return threshold_; }
  QuorumConfig quorum() const { return QuorumConfig{n()}; }

  /// Diffusion receive: cancel exhausted values, then the receive body.
  StepReport on_receive_counter(ProcessorId from, CounterPair sent_max,
                                CounterPair last_sent);

  void cancel_exhausted_max();
  /// Tidies storage and picks the greatest sequence number for the own label.
  StepReport find_max_counter();

  /// Server side. Replies are appended to `out`.
  void on_quorum_message(ProcessorId from, const QuorumMsg& msg,
                         std::vector<QuorumMsg>& out);

  /// Client side. Return false while another operation is pending.
  bool start_increment(std::optional<std::string> value = std::nullopt);
  bool start_read();
  bool busy() const { return phase_ != OpPhase::Idle; }
  OpPhase phase() const { return phase_; }
  OpKind op_kind() const { return op_; }

  /// Request to piggyback towards `peer`, if it has not answered yet.
  std::optional<QuorumMsg> request_for(ProcessorId peer) const;

  std::vector<OpNotice> take_notices();
  StepReport take_report();
  /// Whether the own-label change reported by the last take_report() was
  /// forced, directly or through a chain of changes, by an exhausted label.
  bool changed_for_exhaustion() const { return changed_for_exhaustion_; }

  const std::optional<RegisterSlot>& slot() const { return slot_; }

  // Direct state access for arbitrary initial configurations.
  std::optional<RegisterSlot>& mutable_slot() { return slot_; }
  std::uint64_t& mutable_nonce() { return nonce_; }
  std::uint64_t nonce() const { return nonce_; }

 private:
  bool label_canceled_here(const Label& l) const;
  bool exhaustion_seen(const Label& l) const;
  bool usable(const CounterPair& p) const;
  void merge(const StepReport& r);
  void begin_read(OpKind kind, std::optional<std::string> value);
  void read_reply(ProcessorId from, const ReadReply& reply);
  void write_ack(ProcessorId from, std::uint64_t nonce);
  void finish_read_phase();
  void begin_write(Counter c, std::optional<std::string> value);
  ReadReply answer_read(const QuorumRead& q);
  void accept_write(ProcessorId from, const QuorumWrite& w);

  ExhaustionThreshold threshold_;
  std::optional<RegisterSlot> slot_;

  OpPhase phase_ = OpPhase::Idle;
  OpKind op_ = OpKind::Increment;
  std::uint64_t nonce_ = 0;
  std::set<ProcessorId> answered_;
  std::vector<ReadReply> replies_;
  std::optional<std::string> pending_value_;
  std::optional<Counter> writing_;

  std::vector<OpNotice> notices_;
  StepReport report_;
  bool own_exhausted_ = false;
  bool changed_for_exhaustion_ = false;
  bool pending_exhaustion_ = false;
  bool own_from_exhaustion_ = false;
  std::optional<Label> last_own_;
};

}  // namespace ssgc

#endif  // SSGC_COUNTER_HPP_
