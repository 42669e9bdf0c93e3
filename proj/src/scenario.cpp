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


#include "ssgc/scenario.hpp"

#include <algorithm>
#include <set>

namespace ssgc {

using nlohmann::json;

const char* to_string(Workload w) {
  switch (w) {
    case Workload::Labels: return "labels";
    case Workload::Counters: return "counters";
    case Workload::Register: return "register";
    case Workload::Vs: return "vs";
    case Workload::Link: return "link";
    case Workload::Fd: return "fd";
  }
  return "?";
}

std::uint32_t ScenarioConfig::pairs_per_packet() const {
  switch (workload) {
    case Workload::Labels: return 2;
    // diffusion pair, one read reply pair, one written counter
    case Workload::Counters:
    case Workload::Register:
    case Workload::Vs: return 4;
    default: return 0;
  }
}

std::uint64_t ScenarioConfig::in_transit_pairs() const {
  const std::uint64_t links = static_cast<std::uint64_t>(n) * (n - 1);
  return links * (link_capacity + 1) * pairs_per_packet();
}

ProtocolParams ScenarioConfig::protocol_params() const {
  ProtocolParams p = ProtocolParams::safe(n, in_transit_pairs());
  if (!safe_queues) {
    if (own_queue_cap) p.own_queue_cap = own_queue_cap;
    if (other_queue_cap) p.other_queue_cap = other_queue_cap;
    p.scheme.k = k ? k : static_cast<std::uint32_t>(2 * p.own_queue_cap);
  }
  return p;
}

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& m) { throw ConfigError(m); };
  if (n < 1 || n > 64) fail("n must be in [1, 64]");
  if (link_capacity < 1 || link_capacity > 16)
    fail("link_capacity must be in [1, 16]");
  if (drop < 0 || duplicate < 0 || drop + duplicate > 1)
    fail("drop and duplicate must be probabilities summing to <= 1");
  if (fairness_floor <= 0 || fairness_floor > 1)
    fail("fairness_floor must be in (0, 1]");
  if (1.0 - drop - duplicate < fairness_floor)
    fail("delivery probability is below the fairness floor");
  if (pce < 1) fail("pce must be >= 1");
  if (exhaustion < 2) fail("exhaustion_threshold must be >= 2");
  if (!safe_queues) {
    if (own_queue_cap == 0 && other_queue_cap == 0 && k == 0)
      fail("test-mode queues need at least one explicit size");
  }
  std::set<ProcessorId> crashed;
  for (const CrashSpec& c : crashes) {
    if (auto* id = std::get_if<ProcessorId>(&c.who)) {
      if (*id >= n) fail("crash target out of range");
      crashed.insert(*id);
    } else {
      const auto& role = std::get<std::string>(c.who);
      if (role != "coordinator" && role != "follower")
        fail("crash target must be an id, \"coordinator\" or \"follower\"");
    }
  }
  if (crashes.size() > n - (n / 2 + 1))
    fail("crashes would leave no active majority");
  if (primary_majority) {
    if (primary_majority->size() <= n / 2)
      fail("primary_partition.majority must be a majority");
    for (ProcessorId p : *primary_majority) {
      if (p >= n) fail("primary_partition member out of range");
      if (crashed.count(p)) fail("crash of a primary_partition member");
    }
    if (primary_leader && *primary_leader >= n)
      fail("primary_partition.leader out of range");
  }
  for (ProcessorId w : writers)
    if (w >= n) fail("writer out of range");
  for (const RegisterOp& op : register_ops) {
    if (op.p >= n) fail("register op processor out of range");
    if (op.op == OpKind::Increment) fail("register ops are read or write");
  }
}

namespace {

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::none_of(allowed.begin(), allowed.end(),
                     [&](const char* a) { return it.key() == a; }))
      throw ConfigError("unknown key '" + it.key() + "' in " + where);
  }
}

Seqn seqn_of(const json& v) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_string()) return seqn_from_string(v.get<std::string>());
  throw ConfigError("expected a non-negative integer or decimal string");
}

template <class T>
T get(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

ScenarioConfig scenario_from_json(const json& j) {
  check_keys(j,
             {"n", "link_capacity", "seed", "steps", "workload", "init",
              "crashes", "loss", "fairness_floor", "fd_threshold", "pce",
              "exhaustion_threshold", "round_limit", "queues",
              "primary_partition", "counters", "register", "arbitrary"},
             "scenario");
  ScenarioConfig c;
  c.n = get<std::uint32_t>(j, "n", c.n);
  c.link_capacity = get<std::uint32_t>(j, "link_capacity", c.link_capacity);
  c.seed = get<std::uint64_t>(j, "seed", c.seed);
  c.steps = get<std::uint64_t>(j, "steps", c.steps);

  const std::string wl = get<std::string>(j, "workload", "labels");
  static const std::pair<const char*, Workload> kWorkloads[] = {
      {"labels", Workload::Labels}, {"counters", Workload::Counters},
      {"register", Workload::Register}, {"vs", Workload::Vs},
      {"link", Workload::Link}, {"fd", Workload::Fd}};
  bool found = false;
  for (const auto& [name, w] : kWorkloads) {
    if (wl == name) {
      c.workload = w;
      found = true;
    }
  }
  if (!found) throw ConfigError("unknown workload '" + wl + "'");

  const std::string init = get<std::string>(j, "init", "clean");
  if (init != "clean" && init != "arbitrary")
    throw ConfigError("init must be \"clean\" or \"arbitrary\"");
  c.arbitrary = init == "arbitrary";

  if (j.contains("crashes")) {
    if (!j["crashes"].is_array()) throw ConfigError("crashes must be a list");
    for (const json& e : j["crashes"]) {
      check_keys(e, {"who", "step"}, "crash");
      CrashSpec cs;
      cs.step = get<std::uint64_t>(e, "step", 0);
      if (!e.contains("who")) throw ConfigError("crash needs 'who'");
      if (e["who"].is_string()) {
        cs.who = e["who"].get<std::string>();
      } else if (e["who"].is_number_unsigned()) {
        cs.who = e["who"].get<ProcessorId>();
      } else {
        throw ConfigError("crash 'who' must be an id or a role");
      }
      c.crashes.push_back(cs);
    }
  }
  if (j.contains("loss")) {
    const json& l = j["loss"];
    check_keys(l, {"drop", "duplicate"}, "loss");
    c.drop = get<double>(l, "drop", c.drop);
    c.duplicate = get<double>(l, "duplicate", c.duplicate);
  }
  c.fairness_floor = get<double>(j, "fairness_floor", c.fairness_floor);
  c.fd_threshold = get<std::uint32_t>(j, "fd_threshold", 0);
  c.pce = get<std::uint64_t>(j, "pce", c.pce);
  if (j.contains("exhaustion_threshold"))
    c.exhaustion = seqn_of(j["exhaustion_threshold"]);
  c.round_limit = get<std::uint64_t>(j, "round_limit", c.round_limit);

  if (j.contains("queues")) {
    const json& q = j["queues"];
    check_keys(q, {"mode", "own", "other", "k"}, "queues");
    const std::string mode = get<std::string>(q, "mode", "safe");
    if (mode != "safe" && mode != "test")
      throw ConfigError("queues.mode must be \"safe\" or \"test\"");
    c.safe_queues = mode == "safe";
    c.own_queue_cap = get<std::size_t>(q, "own", 0);
    c.other_queue_cap = get<std::size_t>(q, "other", 0);
    c.k = get<std::uint32_t>(q, "k", 0);
  }
  if (j.contains("primary_partition")) {
    const json& pp = j["primary_partition"];
    check_keys(pp, {"majority", "leader"}, "primary_partition");
    c.primary_majority =
        get<std::vector<ProcessorId>>(pp, "majority", std::vector<ProcessorId>{});
    if (pp.contains("leader")) c.primary_leader = get<ProcessorId>(pp, "leader", 0);
  }
  if (j.contains("counters")) {
    const json& w = j["counters"];
    check_keys(w, {"writers", "ops", "concurrent"}, "counters");
    c.writers = get<std::vector<ProcessorId>>(w, "writers", {});
    c.ops_per_writer = get<std::uint32_t>(w, "ops", c.ops_per_writer);
    c.concurrent = get<bool>(w, "concurrent", c.concurrent);
  }
  if (j.contains("register")) {
    const json& r = j["register"];
    check_keys(r, {"ops", "random", "concurrent"}, "register");
    c.random_register_ops = get<std::uint32_t>(r, "random", 0);
    c.concurrent = get<bool>(r, "concurrent", false);
    if (r.contains("ops")) {
      for (const json& o : r["ops"]) {
        check_keys(o, {"p", "op", "value", "expect"}, "register op");
        RegisterOp op;
        op.p = get<ProcessorId>(o, "p", 0);
        const std::string kind = get<std::string>(o, "op", "read");
        if (kind == "write") {
          op.op = OpKind::Write;
        } else if (kind == "read") {
          op.op = OpKind::Read;
        } else {
          throw ConfigError("register op must be \"read\" or \"write\"");
        }
        op.value = get<std::string>(o, "value", "");
        if (o.contains("expect")) op.expect = get<std::string>(o, "expect", "");
        c.register_ops.push_back(op);
      }
    }
  }
  if (j.contains("arbitrary")) {
    const json& a = j["arbitrary"];
    check_keys(a, {"exhaust_all", "label_cycle"}, "arbitrary");
    c.exhaust_all = get<bool>(a, "exhaust_all", false);
    c.label_cycle = get<bool>(a, "label_cycle", true);
  }
  if (c.writers.empty() && c.workload == Workload::Counters) {
    for (ProcessorId p = 0; p < std::min<std::uint32_t>(3, c.n); ++p)
      c.writers.push_back(p);
  }
  c.validate();
  return c;
}

json scenario_to_json(const ScenarioConfig& c) {
  json j;
  j["n"] = c.n;
  j["link_capacity"] = c.link_capacity;
  j["seed"] = c.seed;
  j["steps"] = c.steps;
  j["workload"] = to_string(c.workload);
  j["init"] = c.arbitrary ? "arbitrary" : "clean";
  json crashes = json::array();
  for (const CrashSpec& cs : c.crashes) {
    json e;
    if (auto* id = std::get_if<ProcessorId>(&cs.who)) {
      e["who"] = *id;
    } else {
      e["who"] = std::get<std::string>(cs.who);
    }
    e["step"] = cs.step;
    crashes.push_back(e);
  }
  j["crashes"] = crashes;
  j["loss"] = {{"drop", c.drop}, {"duplicate", c.duplicate}};
  j["fairness_floor"] = c.fairness_floor;
  j["fd_threshold"] = c.fd_w();
  j["pce"] = c.pce;
  j["exhaustion_threshold"] = seqn_to_string(c.exhaustion);
  j["round_limit"] = c.round_limit;
  const ProtocolParams p = c.protocol_params();
  j["queues"] = {{"mode", c.safe_queues ? "safe" : "test"},
                 {"own", p.own_queue_cap},
                 {"other", p.other_queue_cap},
                 {"k", p.scheme.k}};
  if (c.primary_majority) {
    json pp;
    pp["majority"] = *c.primary_majority;
    if (c.primary_leader) pp["leader"] = *c.primary_leader;
    j["primary_partition"] = pp;
  }
  j["counters"] = {{"writers", c.writers},
                   {"ops", c.ops_per_writer},
                   {"concurrent", c.concurrent}};
  json ops = json::array();
  for (const RegisterOp& op : c.register_ops) {
    json o{{"p", op.p}, {"op", to_string(op.op)}, {"value", op.value}};
    if (op.expect) o["expect"] = *op.expect;
    ops.push_back(o);
  }
  j["register"] = {{"ops", ops},
                   {"random", c.random_register_ops},
                   {"concurrent", c.concurrent}};
  j["arbitrary"] = {{"exhaust_all", c.exhaust_all},
                    {"label_cycle", c.label_cycle}};
  return j;
}

}  // namespace ssgc
