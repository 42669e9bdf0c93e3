#include <doctest.h>

#include <deque>
#include <vector>

#include "ssgc/counter.hpp"

using namespace ssgc;

namespace {

ProtocolParams params(std::uint32_t n) {
  ProtocolParams p;
  p.n = n;
  p.m = 8;
  p.own_queue_cap = 16;
  p.other_queue_cap = 8;
  p.scheme = SchemeParams{16};
  return p;
}

const Label kLabel = next_label(SchemeParams{16}, 0, {});

Counter C(Seqn s, ProcessorId w, const Label& l = kLabel) {
  return Counter{l, s, w};
}

// Lossless message pump between a set of counter states.
struct Cluster {
  std::vector<CounterState> nodes;
  explicit Cluster(std::uint32_t n, Seqn limit = Seqn{1} << 64) {
    for (ProcessorId i = 0; i < n; ++i)
      nodes.emplace_back(params(n), i, ExhaustionThreshold{limit});
  }
  // Runs the pending operation of `client` to completion.
  std::vector<OpNotice> settle(ProcessorId client) {
    CounterState& c = nodes[client];
    std::vector<OpNotice> notices;
    for (int guard = 0; c.busy() && guard < 100; ++guard) {
      for (ProcessorId peer = 0; peer < nodes.size(); ++peer) {
        auto req = c.request_for(peer);
        if (!req) continue;
        std::vector<QuorumMsg> replies;
        nodes[peer].on_quorum_message(client, *req, replies);
        std::vector<QuorumMsg> none;
        for (const QuorumMsg& m : replies) c.on_quorum_message(peer, m, none);
      }
    }
    for (const OpNotice& nt : c.take_notices()) notices.push_back(nt);
    return notices;
  }
  // One request/response exchange between `client` and the given peers.
  void pump(ProcessorId client, const std::vector<ProcessorId>& peers) {
    CounterState& c = nodes[client];
    for (ProcessorId peer : peers) {
      auto req = c.request_for(peer);
      if (!req) continue;
      std::vector<QuorumMsg> replies, none;
      nodes[peer].on_quorum_message(client, *req, replies);
      for (const QuorumMsg& m : replies) c.on_quorum_message(peer, m, none);
    }
  }
  std::optional<Counter> completed(ProcessorId client) {
    for (const OpNotice& nt : settle(client))
      if (nt.kind == OpNotice::Kind::Completed) return nt.counter;
    return std::nullopt;
  }
  void diffuse() {
    for (int round = 0; round < 3; ++round)
      for (ProcessorId a = 0; a < nodes.size(); ++a)
        for (ProcessorId b = 0; b < nodes.size(); ++b) {
          if (a == b) continue;
          auto [mine, yours] = nodes[a].transmit(b);
          nodes[b].on_receive_counter(a, mine, yours);
        }
  }
};

}  // namespace

TEST_CASE("cmp_counter") {
  CHECK(cmp_counter(C(3, 0), C(7, 0)) == LabelOrdering::Less);
  CHECK(cmp_counter(C(3, 1), C(3, 1)) == LabelOrdering::Equal);
  CHECK(cmp_counter(C(3, 1), C(3, 2)) == LabelOrdering::Less);
  const Label other = next_label(SchemeParams{16}, 1, {});
  CHECK(cmp_counter(C(9, 2), C(1, 0, other)) == LabelOrdering::Less);
}

TEST_CASE("exhausted") {
  const ExhaustionThreshold big;
  CHECK(exhausted(CounterPair{C(Seqn{1} << 64, 0), std::nullopt}, big));
  CHECK_FALSE(exhausted(CounterPair{C(0, 0), std::nullopt}, big));
  CHECK(exhausted(CounterPair{C(9, 0), std::nullopt}, ExhaustionThreshold{8}));
}

TEST_CASE("seqn text round trip") {
  const Seqn v = (Seqn{1} << 64) + 5;
  CHECK(seqn_to_string(v) == "18446744073709551621");
  CHECK(seqn_from_string("18446744073709551621") == v);
  CHECK_THROWS_AS(seqn_from_string("-1"), std::invalid_argument);
}

TEST_CASE("store keeps one instance per label") {
  BoundedQueue<CounterPair> q(4);
  CounterTraits::store(q, CounterPair{C(3, 2), std::nullopt});
  CHECK(q.size() == 1);
  CounterTraits::store(q, CounterPair{C(5, 1), std::nullopt});
  REQUIRE(q.size() == 1);
  CHECK(q[0].value.seqn == 5);

  BoundedQueue<CounterPair> r(4);
  CounterTraits::store(r, CounterPair{C(2, 0), C(2, 0)});
  CounterTraits::store(r, CounterPair{C(6, 0), std::nullopt});
  REQUIRE(r.size() == 1);
  CHECK_FALSE(r[0].legit());
}

TEST_CASE("find_max_counter takes the greatest writer id on a tie") {
  CounterState s(params(5), 0, ExhaustionThreshold{});
  s.max()[1] = CounterPair{C(7, 1), std::nullopt};
  s.max()[2] = CounterPair{C(7, 4), std::nullopt};
  s.find_max_counter();
  CHECK(s.own().value.seqn == 7);
  CHECK(s.own().value.wid == 4);
}

TEST_CASE("exhausted entries are canceled and replaced by a fresh label") {
  CounterState s(params(3), 1, ExhaustionThreshold{8});
  for (auto& p : s.max()) p = CounterPair{C(9, 0), std::nullopt};
  for (auto& q : s.stored()) q.clear();
  const StepReport r = s.find_max_counter();
  CHECK(r.created);
  CHECK(s.own().legit());
  CHECK(s.own().value.lbl.creator() == 1);
  CHECK(s.own().value.seqn == 0);
}

TEST_CASE("exhausted sentMax is stored canceled and never adopted") {
  CounterState s(params(3), 0, ExhaustionThreshold{8});
  const Label big = next_label(SchemeParams{16}, 2, {});
  const StepReport r = s.on_receive_counter(
      2, CounterPair{C(8, 2, big), std::nullopt}, s.max()[2]);
  CHECK_FALSE(s.max()[2].legit());
  CHECK_FALSE(s.own().value.lbl == big);
  CHECK_FALSE(r.adopted);
}

TEST_CASE("write acceptance") {
  Cluster cl(3);
  std::vector<QuorumMsg> out;
  cl.nodes[1].on_quorum_message(0, QuorumWrite{1, C(5, 0), std::nullopt}, out);
  CHECK(cl.nodes[1].max()[0].value.seqn == 5);
  REQUIRE(out.size() == 1);
  CHECK(std::holds_alternative<WriteAck>(out[0]));

  out.clear();
  cl.nodes[1].on_quorum_message(0, QuorumWrite{2, C(2, 0), std::nullopt}, out);
  CHECK(cl.nodes[1].max()[0].value.seqn == 5);
  CHECK(out.size() == 1);
}

TEST_CASE("exhausted write is stored canceled and acknowledged") {
  CounterState s(params(3), 1, ExhaustionThreshold{8});
  std::vector<QuorumMsg> out;
  s.on_quorum_message(0, QuorumWrite{1, C(8, 0), std::nullopt}, out);
  CHECK_FALSE(s.max()[0].legit());
  CHECK(out.size() == 1);
}

TEST_CASE("sequential increments") {
  Cluster cl(3);
  REQUIRE(cl.nodes[2].start_increment());
  auto a = cl.completed(2);
  REQUIRE(a);
  CHECK(a->seqn == 1);
  CHECK(a->wid == 2);
  REQUIRE(cl.nodes[0].start_increment());
  auto b = cl.completed(0);
  REQUIRE(b);
  CHECK(cmp_counter(*a, *b) == LabelOrdering::Less);
  CHECK(b->seqn == 2);
}

TEST_CASE("concurrent increments are ordered by writer id") {
  Cluster cl(4);
  for (auto& n : cl.nodes) {
    n.max()[0] = CounterPair{C(4, 0), std::nullopt};
    n.find_max_counter();
  }
  REQUIRE(cl.nodes[2].start_increment());
  REQUIRE(cl.nodes[3].start_increment());
  // Both read phases finish before either write lands anywhere.
  cl.pump(2, {0, 1});
  cl.pump(3, {0, 1});
  REQUIRE(cl.nodes[2].phase() == OpPhase::Writing);
  REQUIRE(cl.nodes[3].phase() == OpPhase::Writing);
  auto x = cl.completed(2);
  auto y = cl.completed(3);
  REQUIRE(x);
  REQUIRE(y);
  CHECK(x->seqn == 5);
  CHECK(y->seqn == 5);
  CHECK(cmp_counter(*x, *y) == LabelOrdering::Less);
  REQUIRE(cl.nodes[1].start_increment());
  auto z = cl.completed(1);
  REQUIRE(z);
  CHECK(z->seqn == 6);
}

TEST_CASE("register write then read") {
  Cluster cl(3);
  REQUIRE(cl.nodes[0].start_increment(std::string("A")));
  REQUIRE(cl.completed(0));
  REQUIRE(cl.nodes[2].start_read());
  std::optional<OpNotice> done;
  for (const OpNotice& nt : cl.settle(2))
    if (nt.kind == OpNotice::Kind::Completed) done = nt;
  REQUIRE(done);
  CHECK(done->value == std::optional<std::string>("A"));

  REQUIRE(cl.nodes[1].start_increment(std::string("B")));
  REQUIRE(cl.completed(1));
  REQUIRE(cl.nodes[0].start_read());
  done.reset();
  for (const OpNotice& nt : cl.settle(0))
    if (nt.kind == OpNotice::Kind::Completed) done = nt;
  REQUIRE(done);
  CHECK(done->value == std::optional<std::string>("B"));
}

TEST_CASE("read before any write returns the empty default") {
  Cluster cl(3);
  REQUIRE(cl.nodes[1].start_read());
  std::optional<OpNotice> done;
  for (const OpNotice& nt : cl.settle(1))
    if (nt.kind == OpNotice::Kind::Completed) done = nt;
  REQUIRE(done);
  REQUIRE(done->counter);
  CHECK(done->value == std::optional<std::string>(""));
}

TEST_CASE("increment after global exhaustion starts a new label at 1") {
  Cluster cl(3, 8);
  for (auto& n : cl.nodes) {
    for (auto& p : n.max()) p = CounterPair{C(8, 0), std::nullopt};
    for (auto& q : n.stored()) q.clear();
  }
  REQUIRE(cl.nodes[1].start_increment());
  auto c = cl.completed(1);
  REQUIRE(c);
  CHECK(c->seqn == 1);
  CHECK(c->wid == 1);
  CHECK_FALSE(c->lbl == kLabel);
}

TEST_CASE("repeated reads without writes answer identically") {
  Cluster cl(3);
  cl.diffuse();
  std::vector<QuorumMsg> a, b;
  cl.nodes[1].on_quorum_message(0, QuorumRead{1, false}, a);
  cl.nodes[1].on_quorum_message(0, QuorumRead{1, false}, b);
  REQUIRE(a.size() == 1);
  REQUIRE(b.size() == 1);
  CHECK(std::get<ReadReply>(a[0]).pair == std::get<ReadReply>(b[0]).pair);
}
