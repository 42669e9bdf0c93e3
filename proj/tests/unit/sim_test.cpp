#include <doctest.h>

#include <set>

#include "ssgc/arbitrary.hpp"
#include "ssgc/checkers.hpp"
#include "ssgc/scenario.hpp"
#include "ssgc/simulator.hpp"

using namespace ssgc;
using nlohmann::json;

TEST_CASE("scenario parsing") {
  const ScenarioConfig c = scenario_from_json(json::parse(
      R"({"n": 5, "workload": "counters", "init": "arbitrary",
          "exhaustion_threshold": 32, "crashes": [{"who": 1, "step": 10}]})"));
  CHECK(c.n == 5);
  CHECK(c.arbitrary);
  CHECK(c.exhaustion == 32);
  CHECK(c.writers == std::vector<ProcessorId>{0, 1, 2});
  const ScenarioConfig back = scenario_from_json(scenario_to_json(c));
  CHECK(scenario_to_json(back) == scenario_to_json(c));
}

TEST_CASE("scenario validation") {
  CHECK_THROWS_AS(scenario_from_json(json::parse(R"({"nn": 3})")), ConfigError);
  CHECK_THROWS_AS(scenario_from_json(json::parse(R"({"workload": "x"})")),
                  ConfigError);
  CHECK_THROWS_AS(
      scenario_from_json(json::parse(
          R"({"n": 3, "crashes": [{"who": 0, "step": 1}, {"who": 1, "step": 2}]})")),
      ConfigError);
  CHECK_THROWS_AS(scenario_from_json(json::parse(R"({"fairness_floor": 0})")),
                  ConfigError);
  CHECK_THROWS_AS(
      scenario_from_json(json::parse(
          R"({"n": 5, "crashes": [{"who": 1, "step": 1}],
              "primary_partition": {"majority": [0, 1, 2]}})")),
      ConfigError);
}

TEST_CASE("safe sizing is reported in the header") {
  ScenarioConfig c;
  c.n = 5;
  c.steps = 10;
  const Trace t = run_scenario(c);
  CHECK(t.header.at("m") == 120);
  CHECK(t.header.at("own_queue_cap").get<std::size_t>() >=
        2 * (120 * 5 + 2 * 25 - 10) + 1);
  CHECK(t.header.at("fd_threshold") == 20);
}

TEST_CASE("same seed, same trace") {
  ScenarioConfig c;
  c.n = 4;
  c.workload = Workload::Counters;
  c.writers = {0, 1};
  c.arbitrary = true;
  c.steps = 8000;
  c.seed = 99;
  const std::string a = run_scenario(c).to_jsonl();
  CHECK(a == run_scenario(c).to_jsonl());
  c.seed = 100;
  CHECK_FALSE(a == run_scenario(c).to_jsonl());
}

TEST_CASE("arbitrary injection is deterministic") {
  ScenarioConfig c;
  c.n = 3;
  c.arbitrary = true;
  c.steps = 0;
  Simulator a(c), b(c);
  CHECK(a.finish().to_jsonl() == b.finish().to_jsonl());
}

TEST_CASE("label cycle") {
  const SchemeParams p{4};
  const auto cyc = label_cycle(p, 2);
  REQUIRE(cyc.size() == 3);
  CHECK(cmp_label(cyc[0], cyc[1]) == LabelOrdering::Less);
  CHECK(cmp_label(cyc[1], cyc[2]) == LabelOrdering::Less);
  CHECK(cmp_label(cyc[2], cyc[0]) == LabelOrdering::Less);
}

TEST_CASE("labels converge from an injected cycle") {
  ScenarioConfig c;
  c.n = 4;
  c.arbitrary = true;
  c.label_cycle = true;
  c.steps = 30000;
  c.seed = 3;
  const Trace t = run_scenario(c);
  const Verdict v = check(t, "label-convergence");
  CHECK(v.passed);
  CHECK(v.step.has_value());
}

TEST_CASE("exhausted counters force a new label") {
  ScenarioConfig c;
  c.n = 3;
  c.workload = Workload::Counters;
  c.writers = {0};
  c.ops_per_writer = 3;
  c.arbitrary = true;
  c.exhaust_all = true;
  c.exhaustion = 16;
  c.steps = 20000;
  c.seed = 4;
  const Trace t = run_scenario(c);
  bool created = false;
  std::optional<std::string> first_write;
  for (const TraceEvent& e : t.events) {
    if (e.kind == "create") created = true;
    if (e.kind == "op_done" && e.data.contains("counter") && !first_write)
      first_write = e.data["counter"]["seqn"].get<std::string>();
  }
  CHECK(created);
  REQUIRE(first_write);
  CHECK(*first_write == "1");
}

TEST_CASE("every label a completed increment uses was announced by a create") {
  // Seed 25 creates a label and switches away from it within one step.
  ScenarioConfig c;
  c.n = 5;
  c.workload = Workload::Counters;
  c.writers = {0, 1, 2};
  c.ops_per_writer = 6;
  c.arbitrary = true;
  c.exhaust_all = true;
  c.exhaustion = 32;
  c.steps = 60000;
  for (std::uint64_t seed : {25u, 33u, 41u}) {
    c.seed = seed;
    const Trace t = run_scenario(c);
    std::set<std::string> created;
    for (const TraceEvent& e : t.events) {
      if (e.kind == "create")
        created.insert(e.data["label"].get<std::string>());
      if (e.kind == "op_done" && e.data.contains("counter"))
        CHECK(created.count(e.data["counter"]["label"].get<std::string>()));
    }
  }
}

namespace {

Trace vs_fixture() {
  Trace t;
  ScenarioConfig c;
  c.workload = Workload::Vs;
  t.header = json{{"config", scenario_to_json(c)}, {"m", 0}, {"k", 1},
                  {"fd_threshold", 12}, {"format", 1}};
  auto ev = [&](std::uint64_t step, std::int64_t p, std::string kind, json d) {
    t.events.push_back(TraceEvent{step, p, std::move(kind), std::move(d)});
  };
  ev(1, 0, "propose", json{{"view", "v"}, {"set", {0, 1, 2}}, {"fd", {0, 1, 2}}});
  ev(4, 0, "vs_deliver", json{{"view", "v"}, {"rnd", 1}, {"msg", {"a", "b", "c"}}});
  ev(5, 1, "vs_deliver", json{{"view", "v"}, {"rnd", 1}, {"msg", {"a", "b", "c"}}});
  t.snapshot = json{{"step", 9}, {"processors", json::array()}};
  return t;
}

}  // namespace

TEST_CASE("virtual-synchrony flags divergent deliveries") {
  Trace t = vs_fixture();
  CHECK(check(t, "virtual-synchrony").passed);
  t.events.push_back(TraceEvent{
      7, 2, "vs_deliver",
      json{{"view", "v"}, {"rnd", 1}, {"msg", {"a", "x", "c"}}}});
  const Verdict v = check(t, "virtual-synchrony");
  CHECK_FALSE(v.passed);
  CHECK(v.step == std::optional<std::uint64_t>(7));
}

TEST_CASE("smr-agreement flags diverging state hashes") {
  Trace t = vs_fixture();
  t.events.push_back(TraceEvent{
      6, 0, "apply", json{{"view", "v"}, {"rnd", 1}, {"hash", "00aa"}}});
  t.events.push_back(TraceEvent{
      8, 1, "apply", json{{"view", "v"}, {"rnd", 1}, {"hash", "00ab"}}});
  const Verdict v = check(t, "smr-agreement");
  CHECK_FALSE(v.passed);
  CHECK(v.step == std::optional<std::uint64_t>(8));
}

TEST_CASE("single-proposal flags a repeat under a static detector") {
  Trace t = vs_fixture();
  t.events.push_back(TraceEvent{
      9, 0, "propose",
      json{{"view", "w"}, {"set", {0, 1, 2}}, {"fd", {0, 1, 2}}}});
  CHECK_FALSE(check(t, "single-proposal").passed);
}

TEST_CASE("unknown property") {
  CHECK_THROWS_AS(check(vs_fixture(), "no-such-thing"), UnknownProperty);
  CHECK(property_names().size() == 11);
}

TEST_CASE("trace round trip") {
  const Trace t = vs_fixture();
  const Trace back = Trace::from_jsonl(t.to_jsonl());
  CHECK(back.to_jsonl() == t.to_jsonl());
  CHECK_THROWS(Trace::from_jsonl("{\"type\":\"event\"}\n"));
}
