#include <doctest.h>

#include <map>

#include "ssgc/checkers.hpp"
#include "ssgc/simulator.hpp"
#include "ssgc/vs.hpp"

using namespace ssgc;

namespace {

Counter view_id(ProcessorId wid, Seqn seqn = 1) {
  return Counter{next_label(SchemeParams{8}, 0, {}), seqn, wid};
}

std::vector<Replica> coordinated(std::uint32_t n, ProcessorId l,
                                 std::set<ProcessorId> members) {
  std::vector<Replica> rep(n);
  for (ProcessorId k = 0; k < n; ++k) {
    rep[k].state = AutomatonState{};
    rep[k].msg.assign(n, std::nullopt);
    for (ProcessorId j = 0; j < n; ++j) rep[k].fd.insert(j);
  }
  View v{view_id(l), std::move(members)};
  rep[l].view = v;
  rep[l].prop_view = v;
  rep[l].status = VsStatus::Multicast;
  return rep;
}

std::vector<FdEntry> all_following(std::uint32_t n, ProcessorId l) {
  std::vector<FdEntry> out;
  for (ProcessorId k = 0; k < n; ++k) out.push_back(FdEntry{k, l});
  return out;
}

}  // namespace

TEST_CASE("a well-formed coordinator is the only candidate") {
  const auto rep = coordinated(3, 0, {0, 1, 2});
  CHECK(seem_crd(rep, all_following(3, 0), 3) == std::set<ProcessorId>{0});
}

TEST_CASE("a minority proposal is not a coordinator") {
  const auto rep = coordinated(5, 0, {0, 1});
  CHECK(seem_crd(rep, all_following(5, 0), 5).empty());
}

TEST_CASE("an installing coordinator must name itself") {
  auto rep = coordinated(3, 0, {0, 1, 2});
  rep[0].status = VsStatus::Install;
  auto fdin = all_following(3, 0);
  fdin[0].crd = 1;
  CHECK(seem_crd(rep, fdin, 3).empty());
}

TEST_CASE("val_crd keeps the greatest proposal") {
  auto rep = coordinated(3, 0, {0, 1, 2});
  rep[1].prop_view = View{view_id(1, 2), {0, 1, 2}};
  CHECK(val_crd({0, 1}, rep) == std::set<ProcessorId>{1});
  CHECK(val_crd({}, rep).empty());
}

TEST_CASE("most_advanced") {
  auto rep = coordinated(3, 0, {0, 1, 2});
  for (auto& r : rep) r.view = rep[0].view;
  CHECK(most_advanced(rep, {0, 1, 2}, 1) == ProcessorId{1});
  rep[2].rnd = 1;
  CHECK(most_advanced(rep, {0, 1, 2}, 1) == ProcessorId{2});
  rep[0].view.id = view_id(0, 0);
  rep[0].rnd = 9;
  CHECK(most_advanced(rep, {0, 1, 2}, 0) == ProcessorId{2});
}

TEST_CASE("apply_step chains deterministically") {
  const MsgArray m{std::string("a"), std::nullopt, std::string("b")};
  const AutomatonState s1 = apply_step(AutomatonState{}, m);
  CHECK(s1 == apply_step(AutomatonState{}, m));
  CHECK(s1.count == 1);
  const MsgArray other{std::string("b"), std::nullopt, std::string("a")};
  CHECK_FALSE(s1.hash == apply_step(AutomatonState{}, other).hash);
}

TEST_CASE("fault-free clean run: one composite message per round") {
  ScenarioConfig cfg;
  cfg.n = 3;
  cfg.workload = Workload::Vs;
  cfg.steps = 20000;
  cfg.seed = 5;
  const Trace t = run_scenario(cfg);
  std::map<std::int64_t, std::pair<std::string, std::uint64_t>> last;
  std::size_t deliveries = 0;
  for (const TraceEvent& e : t.events) {
    if (e.kind != "vs_deliver") continue;
    ++deliveries;
    const auto v = e.data.at("view").get<std::string>();
    const auto r = e.data.at("rnd").get<std::uint64_t>();
    CHECK(e.data.at("msg").size() == 3);
    auto it = last.find(e.p);
    if (it != last.end() && it->second.first == v)
      CHECK(r == it->second.second + 1);
    last[e.p] = {v, r};
  }
  CHECK(deliveries > 30);
  for (const char* prop : {"virtual-synchrony", "smr-agreement", "single-proposal"})
    CHECK(check(t, prop).passed);
}

TEST_CASE("coordinator crash leads to a new view among the survivors") {
  ScenarioConfig cfg;
  cfg.n = 5;
  cfg.workload = Workload::Vs;
  cfg.steps = 40000;
  cfg.seed = 11;
  cfg.crashes.push_back(CrashSpec{std::string("coordinator"), 8000});
  const Trace t = run_scenario(cfg);
  std::int64_t crashed = -1;
  for (const TraceEvent& e : t.events)
    if (e.kind == "crash") crashed = e.p;
  REQUIRE(crashed >= 0);
  bool installed_without = false;
  for (const TraceEvent& e : t.events)
    if (e.kind == "install" && e.step > 8000) {
      const auto set = e.data.at("set").get<std::set<std::int64_t>>();
      if (!set.count(crashed)) installed_without = true;
    }
  CHECK(installed_without);
  CHECK(check(t, "vs-liveness").passed);
}
