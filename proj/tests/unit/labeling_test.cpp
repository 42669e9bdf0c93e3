#include <doctest.h>

#include "ssgc/labeling.hpp"

using namespace ssgc;

namespace {

ProtocolParams small(std::uint32_t n) {
  ProtocolParams p;
  p.n = n;
  p.m = 4;
  p.own_queue_cap = 8;
  p.other_queue_cap = 4;
  p.scheme = SchemeParams{4};
  return p;
}

Label L(ProcessorId c, Sting s, std::vector<Sting> a) {
  return Label::make(SchemeParams{4}, c, s, std::move(a));
}

LabelPair legit(const Label& l) { return LabelPair{l, std::nullopt}; }

}  // namespace

TEST_CASE("safe sizing") {
  const ProtocolParams p = ProtocolParams::safe(5, 120);
  CHECK(p.own_queue_cap >= 2 * (120 * 5 + 2 * 25 - 2 * 5) + 1);
  CHECK(p.other_queue_cap == 5 + 120);
  CHECK(p.scheme.k >= p.own_queue_cap);
}

TEST_CASE("stale_info") {
  LabelingState s(small(3), 0);
  for (auto& q : s.stored()) q.clear();
  CHECK_FALSE(s.stale_info());
  s.stored()[1].push_front(legit(L(2, 1, {2, 3, 4, 5})));
  CHECK(s.stale_info());
  s.stored()[1].clear();
  s.stored()[1].push_front(legit(L(1, 1, {2, 3, 4, 5})));
  s.stored()[1].push_front(legit(L(1, 2, {1, 3, 4, 5})));
  CHECK(s.stale_info());
}

TEST_CASE("adopts a greater legit label") {
  LabelingState s(small(3), 0);
  const Label big = L(2, 1, {2, 3, 4, 5});
  s.max()[2] = legit(big);
  const StepReport r = s.receive(1, s.max()[1], s.own());
  CHECK(s.own().value == big);
  CHECK(s.own().legit());
  CHECK(r.adopted);
  CHECK_FALSE(r.created);
}

TEST_CASE("creates its own label when nothing legit is left") {
  LabelingState s(small(3), 1);
  const Label a = s.own().value;
  for (auto& p : s.max()) p.cancel = a;
  for (auto& q : s.stored()) q.clear();
  const StepReport r = s.receive(0, s.max()[0], s.max()[1]);
  CHECK(r.created);
  CHECK(s.own().legit());
  CHECK(s.own().value.creator() == 1);
}

TEST_CASE("a canceled lastSent cancels the own maximum") {
  LabelingState s(small(2), 0);
  const Label mine = next_label(SchemeParams{4}, 0, {});
  s.max()[0] = legit(mine);
  const Label cancelling = L(0, 1, {2, 3, 4, 5});  // incomparable with mine
  REQUIRE(cmp_label(mine, cancelling) == LabelOrdering::Incomparable);
  const StepReport r =
      s.receive(1, s.max()[1], LabelPair{mine, cancelling});
  CHECK(r.own_canceled);
  CHECK(s.own().legit());
  CHECK_FALSE(s.own().value == mine);
}

TEST_CASE("transmit sends own and the receiver's entry") {
  LabelingState s(small(3), 0);
  const auto [a, b] = s.transmit(2);
  CHECK(a == s.max()[0]);
  CHECK(b == s.max()[2]);
}

TEST_CASE("bounded queue evicts the oldest") {
  BoundedQueue<int> q(2);
  CHECK_FALSE(q.push_front(1));
  CHECK_FALSE(q.push_front(2));
  CHECK(q.push_front(3));
  CHECK(q.size() == 2);
  CHECK(q[0] == 3);
  CHECK(q[1] == 2);
  q.move_to_front(1);
  CHECK(q[0] == 2);
}
