#include <doctest.h>

#include <memory>

#include "ssgc/failure_detector.hpp"
#include "ssgc/link.hpp"
#include "ssgc/simulator.hpp"

using namespace ssgc;

namespace {

Payload data(const std::string& s) {
  auto e = std::make_shared<Envelope>();
  e->data = s;
  return e;
}

}  // namespace

TEST_CASE("sender retransmits the held packet on every tick") {
  LinkEndpoint s(LinkEndpoint::Role::Sender, 2);
  REQUIRE(s.holding());
  const auto first = s.send(data("x"));
  REQUIRE(first.size() == 1);
  for (int i = 0; i < 3; ++i) {
    const auto again = s.on_timer();
    REQUIRE(again.size() == 1);
    CHECK(again[0].tag == first[0].tag);
    CHECK(*again[0].payload->data == "x");
  }
}

TEST_CASE("sending off turn is an error") {
  LinkEndpoint r(LinkEndpoint::Role::Receiver, 2);
  CHECK_THROWS_AS(r.send(data("y")), LinkMisuse);
  LinkEndpoint s(LinkEndpoint::Role::Sender, 2);
  s.send(data("x"));
  CHECK_THROWS_AS(s.send(data("z")), LinkMisuse);
}

TEST_CASE("capacity 2: the third ack hands the token back") {
  LinkEndpoint s(LinkEndpoint::Role::Sender, 2);
  const std::uint32_t t = s.send(data("x"))[0].tag;
  const Packet ack{t, PacketKind::Ack, data("r")};
  CHECK_FALSE(s.on_packet(ack).token);
  CHECK_FALSE(s.on_packet(ack).token);
  const LinkEvents third = s.on_packet(ack);
  REQUIRE(third.token);
  CHECK(*(*third.token)->data == "r");
  const auto next = s.send(data("y"));
  CHECK(next[0].tag == (t + 1) % s.modulus());
}

TEST_CASE("duplicates are delivered once and acknowledged each time") {
  LinkEndpoint s(LinkEndpoint::Role::Sender, 2);
  LinkEndpoint r(LinkEndpoint::Role::Receiver, 2);
  r.tag = 5;
  const Packet p = s.send(data("x"))[0];
  int delivered = 0;
  for (int i = 0; i < 3; ++i) {
    const LinkEvents ev = r.on_packet(p);
    if (ev.delivered) ++delivered;
    if (ev.token) r.send(data("ack"));
    CHECK(ev.out.size() + (ev.token ? 1 : 0) >= 1);
  }
  CHECK(delivered == 1);
}

TEST_CASE("channel drops on overflow and duplicates behind the head") {
  Channel ch(2);
  CHECK(ch.push(Packet{1, PacketKind::Data, nullptr}));
  CHECK(ch.push(Packet{2, PacketKind::Data, nullptr}));
  CHECK_FALSE(ch.push(Packet{3, PacketKind::Data, nullptr}));
  CHECK_FALSE(ch.duplicate_head());
  CHECK(ch.pop().tag == 1);
  CHECK(ch.duplicate_head());
  CHECK(ch.pop().tag == 2);
  CHECK(ch.pop().tag == 2);
  CHECK(ch.empty());
}

TEST_CASE("heartbeat update") {
  FailureDetector fd(3, 0, 5);
  fd.heartbeat = {0, 3, 4};
  fd.on_token(1, std::nullopt);
  CHECK(fd.heartbeat == std::vector<std::uint32_t>{0, 0, 5});
  CHECK(fd.trusted() == std::set<ProcessorId>{0, 1});
}

TEST_CASE("a silent peer is suspected after W tokens from others") {
  FailureDetector fd(3, 0, 4);
  for (int i = 0; i < 3; ++i) {
    fd.on_token(1, std::nullopt);
    CHECK(fd.trusted().count(2));
  }
  fd.on_token(1, std::nullopt);
  CHECK_FALSE(fd.trusted().count(2));
  fd.on_token(2, std::nullopt);
  CHECK(fd.trusted().count(2));
}

TEST_CASE("W = 1 trusts only the latest sender") {
  FailureDetector fd(4, 0, 1);
  fd.on_token(3, std::nullopt);
  CHECK(fd.trusted() == std::set<ProcessorId>{0, 3});
}

TEST_CASE("fd output carries coordinators") {
  FailureDetector fd(3, 1, 6);
  fd.on_token(0, ProcessorId{2});
  const auto out = fd.output(ProcessorId{1});
  REQUIRE(out.size() == 3);
  CHECK(out[0] == FdEntry{0, ProcessorId{2}});
  CHECK(out[1] == FdEntry{1, ProcessorId{1}});
}
