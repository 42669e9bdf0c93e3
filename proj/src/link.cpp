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


#include "ssgc/link.hpp"

namespace ssgc {

LinkEndpoint::LinkEndpoint(Role role, std::uint32_t capacity)
    : holding_(role == Role::Sender), role_(role), capacity_(capacity) {
  if (capacity == 0) throw std::invalid_argument("link capacity must be >= 1");
}

std::vector<Packet> LinkEndpoint::send(Payload payload) {
  if (!holding_) throw LinkMisuse("link send without holding the token");
  holding_ = false;
  current = std::move(payload);
  if (role_ == Role::Sender) {
    tag = (tag + 1) % modulus();
    ack_count = 0;
    return {Packet{tag, PacketKind::Data, current}};
  }
  return {Packet{tag, PacketKind::Ack, current}};
}

std::vector<Packet> LinkEndpoint::on_timer() const {
  if (role_ != Role::Sender || holding_) return {};
  return {Packet{tag, PacketKind::Data, current}};
}

LinkEvents LinkEndpoint::on_packet(const Packet& pkt) {
  LinkEvents ev;
  if (role_ == Role::Sender) {
    if (pkt.kind != PacketKind::Ack || holding_ || pkt.tag != tag) return ev;
    if (++ack_count > capacity_) {
      holding_ = true;
      ev.token = pkt.payload;
    }
    return ev;
  }
  if (pkt.kind != PacketKind::Data) return ev;
  if (pkt.tag >= modulus() || pkt.tag == tag) {
    // A packet arriving while the reply is pending is a duplicate of the
    // one being answered; the ack goes out with the reply.
    if (!holding_) ev.out.push_back(Packet{pkt.tag, PacketKind::Ack, current});
    return ev;
  }
  tag = pkt.tag;
  holding_ = true;
  ev.delivered = pkt.payload;
  ev.token = pkt.payload;
  return ev;
}

bool Channel::push(Packet p) {
  if (q_.size() >= cap_) return false;
  q_.push_back(std::move(p));
  return true;
}

Packet Channel::pop() {
  Packet p = std::move(q_.front());
  q_.pop_front();
  return p;
}

bool Channel::duplicate_head() {
  if (q_.empty() || q_.size() >= cap_) return false;
  q_.insert(q_.begin() + 1, q_.front());
  return true;
}

}  // namespace ssgc
