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


#include "ssgc/arbitrary.hpp"

#include <algorithm>

namespace ssgc {

std::vector<Label> label_cycle(const SchemeParams& params,
                               ProcessorId creator) {
  if (params.k < 2) throw std::invalid_argument("label cycle needs k >= 2");
  // Sting s_i sits in the antistings of the next label only.
  auto with = [&](Sting member) {
    std::vector<Sting> anti{member};
    for (Sting v = 4; anti.size() < params.k; ++v) anti.push_back(v);
    return anti;
  };
  return {Label::make(params, creator, 1, with(3)),
          Label::make(params, creator, 2, with(1)),
          Label::make(params, creator, 3, with(2))};
}

namespace {

class Injector {
 public:
  explicit Injector(Simulator& sim)
      : sim_(sim),
        cfg_(sim.config()),
        scheme_(sim.params().scheme),
        rng_(sim.rng()) {
    build_pool();
  }

  void run() {
    for (Processor& p : sim_.processors()) fill(p);
    for (ProcessorId a = 0; a < cfg_.n; ++a) {
      for (ProcessorId b = 0; b < cfg_.n; ++b) {
        if (a == b) continue;
        const std::uint64_t count = below(cfg_.link_capacity + 1);
        for (std::uint64_t i = 0; i < count; ++i) {
          Packet pkt;
          pkt.tag = static_cast<std::uint32_t>(below(2 * cfg_.link_capacity + 3));
          pkt.kind = coin(2) ? PacketKind::Data : PacketKind::Ack;
          if (coin(8)) pkt.payload = envelope();
          sim_.channel(a, b).push(pkt);
        }
      }
    }
  }

 private:
  std::uint64_t below(std::uint64_t bound) { return bound ? rng_() % bound : 0; }
  bool coin(std::uint64_t one_in) { return below(one_in) != 0; }

  void build_pool() {
    const std::uint64_t d = scheme_.domain_size();
    for (ProcessorId c = 0; c < cfg_.n; ++c) {
      std::vector<std::int64_t> anti;
      for (std::uint32_t i = 0; i < scheme_.k; ++i)
        anti.push_back(static_cast<std::int64_t>(1 + below(3 * scheme_.k + 1)));
      Label prev = Label::clamp(scheme_, cfg_.n, c,
                                static_cast<std::int64_t>(1 + below(d)), anti);
      pool_.push_back(prev);
      for (int i = 0; i < 2; ++i) {
        std::vector<Label> in{prev};
        prev = next_label(scheme_, c, in);
        pool_.push_back(prev);
      }
      anti.clear();
      for (std::uint32_t i = 0; i < scheme_.k; ++i)
        anti.push_back(static_cast<std::int64_t>(1 + below(d)));
      pool_.push_back(Label::clamp(scheme_, cfg_.n, c,
                                   static_cast<std::int64_t>(1 + below(d)),
                                   anti));
    }
    if (cfg_.label_cycle && scheme_.k >= 2) {
      const auto cyc = label_cycle(scheme_, static_cast<ProcessorId>(below(cfg_.n)));
      pool_.insert(pool_.end(), cyc.begin(), cyc.end());
    }
  }

  const Label& label() { return pool_[below(pool_.size())]; }

  LabelPair label_pair() {
    LabelPair p{label(), std::nullopt};
    if (!coin(3)) p.cancel = label();
    return p;
  }

  Counter counter() {
    const Seqn limit = sim_.config().exhaustion;
    Counter c{label(), 0, static_cast<ProcessorId>(below(cfg_.n))};
    if (cfg_.exhaust_all || !coin(4)) {
      c.seqn = limit + below(3);
    } else {
      const Seqn cap = std::min<Seqn>(limit, 40);
      c.seqn = static_cast<Seqn>(below(static_cast<std::uint64_t>(cap)));
    }
    return c;
  }

  CounterPair counter_pair() {
    CounterPair p{counter(), std::nullopt};
    if (!coin(3)) p.cancel = counter();
    return p;
  }

  std::set<ProcessorId> subset() {
    std::set<ProcessorId> s;
    for (ProcessorId q = 0; q < cfg_.n; ++q)
      if (coin(3)) s.insert(q);
    return s;
  }

  View view() {
    View v;
    if (coin(5)) v.id = counter();
    v.set = subset();
    return v;
  }

  std::optional<std::string> text(const char* prefix) {
    if (!coin(4)) return std::nullopt;
    return std::string(prefix) + std::to_string(below(1000));
  }

  Replica replica() {
    Replica r;
    r.view = view();
    r.status = static_cast<VsStatus>(below(3));
    r.rnd = below(20);
    if (coin(4))
      r.state = AutomatonState{rng_(), below(30)};
    r.msg.resize(cfg_.n);
    for (auto& m : r.msg) m = text("g");
    r.input = text("g");
    r.prop_view = coin(3) ? view() : r.view;
    r.no_crd = coin(2);
    r.fd = subset();
    return r;
  }

  QuorumMsg quorum_msg() {
    const std::uint64_t nonce = below(64);
    switch (below(4)) {
      case 0: return QuorumRead{nonce, coin(2)};
      case 1: return ReadReply{nonce, counter_pair(), text("g")};
      case 2: return QuorumWrite{nonce, counter(), text("g")};
      default: return WriteAck{nonce};
    }
  }

  Payload envelope() {
    auto env = std::make_shared<Envelope>();
    if (coin(2)) env->crd = static_cast<ProcessorId>(below(cfg_.n));
    switch (cfg_.workload) {
      case Workload::Labels:
        env->labels = std::make_pair(label_pair(), label_pair());
        break;
      case Workload::Vs:
        if (coin(2)) env->vs = std::make_shared<Replica>(replica());
        [[fallthrough]];
      case Workload::Counters:
      case Workload::Register:
        env->counters = std::make_pair(counter_pair(), counter_pair());
        for (std::uint64_t i = below(3); i > 0; --i)
          env->quorum.push_back(quorum_msg());
        break;
      default:
        break;
    }
    if (coin(2)) env->data = "g" + std::to_string(below(1000));
    return env;
  }

  void fill(Processor& p) {
    if (p.labels) {
      for (auto& m : p.labels->max()) m = label_pair();
      for (auto& q : p.labels->stored()) {
        q.clear();
        for (std::uint64_t i = below(4); i > 0; --i) q.push_front(label_pair());
      }
    }
    if (p.counters) {
      for (auto& m : p.counters->max()) m = counter_pair();
      for (auto& q : p.counters->stored()) {
        q.clear();
        for (std::uint64_t i = below(4); i > 0; --i) q.push_front(counter_pair());
      }
      if (coin(2)) {
        p.counters->mutable_slot() = RegisterSlot{counter(), "g" + std::to_string(below(1000))};
      } else {
        p.counters->mutable_slot().reset();
      }
      p.counters->mutable_nonce() = below(64);
    }
    const std::uint32_t w = p.fd.threshold();
    for (ProcessorId q = 0; q < cfg_.n; ++q) {
      p.fd.heartbeat[q] = q == p.id ? 0 : static_cast<std::uint32_t>(below(w + 1));
      p.fd.crd_of[q] = coin(2) ? std::optional<ProcessorId>(below(cfg_.n))
                               : std::nullopt;
    }
    if (p.vs) {
      for (auto& r : p.vs->rep()) r = replica();
      p.vs->fetched = below(100);
      p.vs->crd_ = coin(2) ? std::optional<ProcessorId>(below(cfg_.n))
                           : std::nullopt;
    }
    for (ProcessorId q = 0; q < cfg_.n; ++q) {
      if (!p.links[q]) continue;
      LinkEndpoint& l = *p.links[q];
      l.tag = static_cast<std::uint32_t>(below(l.modulus()));
      l.ack_count = static_cast<std::uint32_t>(below(cfg_.link_capacity + 1));
      l.current = coin(8) ? envelope() : nullptr;
      l.holding_ = l.role() == LinkEndpoint::Role::Sender && !coin(4);
    }
  }

  Simulator& sim_;
  const ScenarioConfig& cfg_;
  SchemeParams scheme_;
  std::mt19937_64& rng_;
  std::vector<Label> pool_;
};

}  // namespace

void inject_arbitrary(Simulator& sim) { Injector(sim).run(); }

}  // namespace ssgc
