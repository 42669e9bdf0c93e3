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


#ifndef SSGC_LINK_HPP_
#define SSGC_LINK_HPP_

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ssgc {

struct Envelope;
using Payload = std::shared_ptr<const Envelope>;

enum class PacketKind { Data, Ack };

struct Packet {
  std::uint32_t tag = 0;
  PacketKind kind = PacketKind::Data;
  Payload payload;
};

class LinkMisuse : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Result of feeding a packet to an endpoint.
struct LinkEvents {
  std::vector<Packet> out;
  std::optional<Payload> delivered;  // receiver: new data packet
  std::optional<Payload> token;      // token arrived, with the peer's payload
};

/**
 * One end of a token-passing link. The sender retransmits its current packet
 * until more than `capacity` matching acknowledgments arrive; the receiver
 * delivers each new tag once and piggybacks its reply on the acks.
 */
class LinkEndpoint {
 public:
  enum class Role { Sender, Receiver };

  LinkEndpoint(Role role, std::uint32_t capacity);

  Role role() const { return role_; }
  std::uint32_t capacity() const { return capacity_; }
  std::uint32_t modulus() const { return 2 * capacity_ + 2; }
  bool holding() const { return holding_; }

  /// Sender: starts retransmitting `payload` under a fresh tag.
  /// Receiver: replies to the delivered packet. Throws LinkMisuse off-turn.
  std::vector<Packet> send(Payload payload);

  /// Sender retransmission tick; empty for the receiver.
  std::vector<Packet> on_timer() const;

  LinkEvents on_packet(const Packet& pkt);

  // Raw state, exposed for arbitrary initial configurations and snapshots.
  std::uint32_t tag = 0;        // sender: current tag; receiver: last delivered
  std::uint32_t ack_count = 0;  // sender only
  Payload current;              // sender: packet payload; receiver: reply
  bool holding_ = false;

 private:
  Role role_;
  std::uint32_t capacity_;
};

/// Bounded FIFO channel. Sending into a full channel loses the new packet.
class Channel {
 public:
  explicit Channel(std::uint32_t capacity = 1) : cap_(capacity) {}

  std::uint32_t capacity() const { return cap_; }
  bool empty() const { return q_.empty(); }
  std::size_t size() const { return q_.size(); }

  bool push(Packet p);
  Packet pop();
  /// Inserts a copy of the head right behind it, if there is room.
  bool duplicate_head();
  void clear() { q_.clear(); }

  const std::deque<Packet>& packets() const { return q_; }

 private:
  std::uint32_t cap_;
  std::deque<Packet> q_;
};

}  // namespace ssgc

#endif  // SSGC_LINK_HPP_
