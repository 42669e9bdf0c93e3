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


#include "ssgc/checkers.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "ssgc/counter.hpp"
#include "ssgc/label.hpp"

namespace ssgc {

using nlohmann::json;

namespace {

struct Ctx {
  const Trace& t;
  std::uint32_t n = 0;
  std::set<std::int64_t> crashed;
  std::map<std::int64_t, std::uint64_t> crash_step;

  explicit Ctx(const Trace& trace) : t(trace) {
    n = t.header.at("config").at("n").get<std::uint32_t>();
    for (const TraceEvent& e : t.events) {
      if (e.kind == "crash") {
        crashed.insert(e.p);
        crash_step[e.p] = e.step;
      }
    }
  }
  bool active(std::int64_t p) const { return p >= 0 && !crashed.count(p); }
  std::string workload() const {
    return t.header.at("config").at("workload").get<std::string>();
  }
  /// Last step at which an active processor adopted or created a label.
  std::uint64_t settle_step() const {
    std::uint64_t s = 0;
    for (const TraceEvent& e : t.events)
      if ((e.kind == "adopt" || e.kind == "create") && active(e.p))
        s = std::max(s, e.step);
    return s;
  }
};

Verdict pass(std::string_view prop, std::optional<std::uint64_t> step,
             std::string diag = "") {
  return Verdict{std::string(prop), true, step, std::move(diag)};
}
Verdict fail(std::string_view prop, std::optional<std::uint64_t> step,
             std::string diag) {
  return Verdict{std::string(prop), false, step, std::move(diag)};
}

struct CounterKey {
  std::string label;
  Seqn seqn = 0;
  std::uint32_t wid = 0;
};

CounterKey counter_key(const json& j) {
  return CounterKey{j.at("label").get<std::string>(),
                    seqn_from_string(j.at("seqn").get<std::string>()),
                    j.at("wid").get<std::uint32_t>()};
}

// Less/Greater/Equal for counters on one label, nullopt across labels.
std::optional<int> order(const CounterKey& a, const CounterKey& b) {
  if (a.label != b.label) return std::nullopt;
  if (a.seqn != b.seqn) return a.seqn < b.seqn ? -1 : 1;
  if (a.wid != b.wid) return a.wid < b.wid ? -1 : 1;
  return 0;
}

std::string show(const CounterKey& c) {
  return c.label + "/" + seqn_to_string(c.seqn) + "/" + std::to_string(c.wid);
}

Verdict label_convergence(const Ctx& c, std::string_view prop) {
  const std::uint64_t s = c.settle_step();
  std::optional<std::string> ml;
  for (const json& p : c.t.snapshot.at("processors")) {
    const auto id = p.at("id").get<std::int64_t>();
    if (!c.active(id) || !p.contains("ml")) continue;
    const auto cur = p.at("ml").get<std::string>();
    if (ml && *ml != cur)
      return fail(prop, s,
                  "active processors end with different labels: " + *ml +
                      " vs " + cur);
    ml = cur;
  }
  if (!ml) return fail(prop, std::nullopt, "no label state in snapshot");
  std::map<std::pair<std::int64_t, std::int64_t>, int> tokens;
  for (const TraceEvent& e : c.t.events)
    if (e.kind == "token" && e.step > s)
      ++tokens[{e.p, e.data.at("from").get<std::int64_t>()}];
  for (std::int64_t p = 0; p < c.n; ++p) {
    for (std::int64_t q = 0; q < c.n; ++q) {
      if (p == q || !c.active(p) || !c.active(q)) continue;
      if (tokens[{p, q}] < 3)
        return fail(prop, s,
                    "too few token exchanges after the last change (" +
                        std::to_string(p) + " from " + std::to_string(q) + ")");
    }
  }
  return pass(prop, s, "converged on " + *ml);
}

Verdict adoption_bounds(const Ctx& c, std::string_view prop) {
  const std::uint64_t m = c.t.header.at("m").get<std::uint64_t>();
  const std::uint64_t bound = c.n + m;
  std::map<std::int64_t, std::uint64_t> last_create;
  for (const TraceEvent& e : c.t.events)
    if (e.kind == "create") last_create[e.p] = e.step;
  std::map<std::pair<std::int64_t, std::int64_t>, std::set<std::string>> seen;
  std::uint64_t worst = 0;
  for (const TraceEvent& e : c.t.events) {
    if (e.kind != "adopt") continue;
    const auto creator = e.data.at("creator").get<std::int64_t>();
    auto it = last_create.find(creator);
    if (it != last_create.end() && e.step <= it->second) continue;
    auto& s = seen[{e.p, creator}];
    s.insert(e.data.at("label").get<std::string>());
    worst = std::max<std::uint64_t>(worst, s.size());
    if (s.size() > bound)
      return fail(prop, e.step,
                  "processor " + std::to_string(e.p) + " adopted " +
                      std::to_string(s.size()) + " labels of silent creator " +
                      std::to_string(creator) + ", bound " +
                      std::to_string(bound));
  }
  return pass(prop, std::nullopt,
              "max adoptions from a silent creator: " + std::to_string(worst) +
                  " (bound " + std::to_string(bound) + ")");
}

Verdict queue_bounds(const Ctx& c, std::string_view prop) {
  for (const TraceEvent& e : c.t.events)
    if (e.kind == "overflow")
      return fail(prop, e.step,
                  "queue overflow at processor " + std::to_string(e.p));
  return pass(prop, std::nullopt);
}

struct Op {
  std::int64_t p = 0;
  std::string op;
  std::uint64_t start = 0;
  std::optional<std::uint64_t> write_start;
  std::optional<std::uint64_t> done;
  std::optional<CounterKey> counter;
  std::optional<std::string> value;
  std::optional<std::string> expect;
  bool absent = false;
};

std::vector<Op> collect_ops(const Ctx& c) {
  std::map<std::pair<std::int64_t, std::uint64_t>, Op> ops;
  for (const TraceEvent& e : c.t.events) {
    if (e.kind != "op_start" && e.kind != "write_start" && e.kind != "op_done")
      continue;
    const auto key = std::make_pair(e.p, e.data.at("nonce").get<std::uint64_t>());
    Op& op = ops[key];
    op.p = e.p;
    op.op = e.data.at("op").get<std::string>();
    if (e.kind == "op_start") {
      op = Op{e.p, op.op, e.step, {}, {}, {}, {}, {}, false};
      if (e.data.contains("expect")) op.expect = e.data["expect"].get<std::string>();
    } else if (e.kind == "write_start") {
      op.write_start = e.step;
    } else {
      op.done = e.step;
      if (e.data.contains("counter")) op.counter = counter_key(e.data["counter"]);
      if (e.data.contains("value")) op.value = e.data["value"].get<std::string>();
      op.absent = e.data.value("absent", false);
    }
  }
  std::vector<Op> out;
  for (auto& [k, op] : ops) out.push_back(op);
  std::sort(out.begin(), out.end(), [](const Op& a, const Op& b) {
    return std::tie(a.start, a.p) < std::tie(b.start, b.p);
  });
  return out;
}

// Full renderings of labels created during the run, by id.
std::map<std::string, std::string> created_labels(const Ctx& c) {
  std::map<std::string, std::string> out;
  for (const TraceEvent& e : c.t.events)
    if (e.kind == "create" && e.data.contains("full"))
      out.emplace(e.data.at("label").get<std::string>(),
                  e.data.at("full").get<std::string>());
  return out;
}

bool for_exhaustion(const TraceEvent& e) {
  return (e.kind == "adopt" || e.kind == "create") &&
         e.data.value("reason", "") == "exhausted";
}

// Last label change at an active processor that was not forced by an
// exhausted counter.
std::uint64_t counter_settle_step(const Ctx& c) {
  std::uint64_t s = 0;
  for (const TraceEvent& e : c.t.events)
    if ((e.kind == "adopt" || e.kind == "create") && c.active(e.p) &&
        !for_exhaustion(e))
      s = std::max(s, e.step);
  return s;
}

// Whether some processor switched to `label` because of exhaustion within
// (after, upto].
bool exhaustion_switch(const Ctx& c, const std::string& label,
                       std::uint64_t after, std::uint64_t upto) {
  for (const TraceEvent& e : c.t.events) {
    if (e.step <= after) continue;
    if (e.step > upto) break;
    if (for_exhaustion(e) && e.data.at("label").get<std::string>() == label)
      return true;
  }
  return false;
}

Verdict counter_monotonicity(const Ctx& c, std::string_view prop) {
  const auto made = created_labels(c);
  const std::uint64_t s = counter_settle_step(c);
  const SchemeParams scheme{c.t.header.at("k").get<std::uint32_t>()};
  std::map<std::string, std::optional<Label>> parsed;
  auto full = [&](const std::string& id) -> const std::optional<Label>& {
    auto [it, fresh] = parsed.emplace(id, std::nullopt);
    if (fresh) {
      auto m = made.find(id);
      if (m != made.end()) it->second = parse_label(scheme, m->second);
    }
    return it->second;
  };

  std::vector<Op> writes;
  for (const Op& op : collect_ops(c))
    if (op.op != "read" && op.start > s && op.done && op.counter)
      writes.push_back(op);
  std::size_t ordered_pairs = 0;
  for (const Op& a : writes) {
    for (const Op& b : writes) {
      if (!(*a.done < b.start)) continue;
      ++ordered_pairs;
      if (const auto o = order(*a.counter, *b.counter)) {
        if (*o >= 0)
          return fail(prop, *b.done,
                      "counter did not increase: " + show(*a.counter) +
                          " then " + show(*b.counter));
        continue;
      }
      const auto& la = full(a.counter->label);
      const auto& lb = full(b.counter->label);
      if (la && lb && cmp_label(*la, *lb) == LabelOrdering::Less) continue;
      if (exhaustion_switch(c, b.counter->label, a.start, *b.done)) continue;
      return fail(prop, *b.done,
                  "label went backwards: " + show(*a.counter) + " then " +
                      show(*b.counter));
    }
  }
  if (ordered_pairs == 0)
    return fail(prop, s,
                "vacuous: " + std::to_string(writes.size()) +
                    " completed writes after convergence, none ordered");
  return pass(prop, s,
              std::to_string(writes.size()) + " writes, " +
                  std::to_string(ordered_pairs) + " ordered pairs checked");
}

Verdict register_safety(const Ctx& c, std::string_view prop) {
  const std::uint64_t s = c.settle_step();
  const std::vector<Op> ops = collect_ops(c);
  std::size_t reads = 0;
  for (const Op& r : ops) {
    if (r.op != "read" || !r.done) continue;
    ++reads;
    if (r.expect && (r.absent || r.value != r.expect))
      return fail(prop, *r.done,
                  "read by " + std::to_string(r.p) + " returned " +
                      (r.absent ? std::string("nothing") : "'" + r.value.value_or("") + "'") +
                      ", expected '" + *r.expect + "'");
    if (r.absent) continue;
    for (const Op& w : ops) {
      if (w.op != "write" || !w.done || !w.counter || w.start <= s) continue;
      if (!(*w.done < r.start)) continue;
      const auto o = order(*r.counter, *w.counter);
      if (!o || *o < 0)
        return fail(prop, *r.done,
                    "read returned " + show(*r.counter) +
                        " after write " + show(*w.counter) + " completed");
    }
  }
  if (reads == 0) return fail(prop, std::nullopt, "vacuous: no completed reads");
  return pass(prop, s, std::to_string(reads) + " reads checked");
}

std::optional<std::uint64_t> seq_of(const json& d) {
  if (!d.is_string()) return std::nullopt;
  const auto s = d.get<std::string>();
  if (s.size() < 2 || s[0] != 'm') return std::nullopt;
  std::uint64_t v = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
    v = v * 10 + static_cast<std::uint64_t>(s[i] - '0');
  }
  return v;
}

Verdict exactly_once_link(const Ctx& c, std::string_view prop) {
  const auto cap = c.t.header.at("config").at("link_capacity").get<std::uint64_t>();
  const std::uint64_t prefix_bound = 2 * cap + 2;
  std::map<std::pair<std::int64_t, std::int64_t>, std::vector<const TraceEvent*>> by_link;
  for (const TraceEvent& e : c.t.events)
    if (e.kind == "deliver")
      by_link[{e.data.at("from").get<std::int64_t>(), e.p}].push_back(&e);
  std::size_t checked = 0;
  std::uint64_t worst = 0;
  for (std::int64_t a = 0; a < c.n; ++a) {
    for (std::int64_t b = 0; b < c.n; ++b) {
      if (a == b || !c.active(a) || !c.active(b)) continue;
      const auto& d = by_link[{a, b}];
      if (d.size() < prefix_bound + 5)
        return fail(prop, std::nullopt,
                    "too few deliveries on link " + std::to_string(a) + "->" +
                        std::to_string(b));
      std::size_t start = d.size() - 1;
      auto last = seq_of(d[start]->data.at("data"));
      if (!last)
        return fail(prop, d.back()->step, "last delivery is not a sent payload");
      while (start > 0) {
        auto prev = seq_of(d[start - 1]->data.at("data"));
        if (!prev || *prev + 1 != *seq_of(d[start]->data.at("data"))) break;
        --start;
      }
      worst = std::max<std::uint64_t>(worst, start);
      if (start > prefix_bound)
        return fail(prop, d[start - 1]->step,
                    "link " + std::to_string(a) + "->" + std::to_string(b) +
                        ": out-of-order, duplicate or missing payload after " +
                        std::to_string(start) + " deliveries");
      ++checked;
    }
  }
  return pass(prop, std::nullopt,
              std::to_string(checked) + " links, longest prefix " +
                  std::to_string(worst));
}

Verdict fd_completeness(const Ctx& c, std::string_view prop) {
  const auto w = c.t.header.at("fd_threshold").get<std::uint64_t>();
  if (c.crashed.empty()) return pass(prop, std::nullopt, "no crashes");
  std::size_t suspected = 0;
  for (const auto& [q, s] : c.crash_step) {
    for (std::int64_t p = 0; p < c.n; ++p) {
      if (p == q || !c.active(p)) continue;
      std::uint64_t t0 = s;
      for (const TraceEvent& e : c.t.events)
        if (e.p == p && e.kind == "token" && e.data.at("from").get<std::int64_t>() == q)
          t0 = std::max(t0, e.step);
      bool trusted = true;
      std::uint64_t tokens = 0;
      std::optional<std::uint64_t> at;
      std::optional<std::uint64_t> deadline;  // step of the W-th token
      for (const TraceEvent& e : c.t.events) {
        if (deadline && e.step > *deadline && trusted && !at)
          return fail(prop, e.step,
                      std::to_string(p) + " still trusts crashed " +
                          std::to_string(q) + " after " + std::to_string(w) +
                          " tokens");
        if (e.p != p) continue;
        const bool about_q = (e.kind == "suspect" || e.kind == "trust") &&
                             e.data.at("q").get<std::int64_t>() == q;
        if (about_q) trusted = e.kind == "trust";
        if (e.step <= t0) continue;
        if (e.kind == "token" && ++tokens == w) deadline = e.step;
        if (about_q && !trusted && !at) at = e.step;
        if (about_q && trusted)
          return fail(prop, e.step,
                      std::to_string(p) + " trusts crashed " + std::to_string(q) +
                          " again");
      }
      if (deadline && trusted && !at)
        return fail(prop, *deadline,
                    std::to_string(p) + " still trusts crashed " +
                        std::to_string(q) + " at the end of the trace");
      if (!trusted) ++suspected;
    }
  }
  return pass(prop, std::nullopt,
              std::to_string(suspected) + " suspicions of crashed processors");
}

std::set<std::string> proposed_views(const Ctx& c) {
  std::set<std::string> out;
  for (const TraceEvent& e : c.t.events)
    if (e.kind == "propose") out.insert(e.data.at("view").get<std::string>());
  return out;
}

Verdict virtual_synchrony(const Ctx& c, std::string_view prop) {
  const auto views = proposed_views(c);
  std::map<std::pair<std::string, std::uint64_t>, std::pair<json, std::int64_t>> first;
  std::size_t checked = 0;
  for (const TraceEvent& e : c.t.events) {
    if (e.kind != "vs_deliver") continue;
    const auto v = e.data.at("view").get<std::string>();
    if (!views.count(v)) continue;
    const auto key = std::make_pair(v, e.data.at("rnd").get<std::uint64_t>());
    auto [it, fresh] = first.emplace(key, std::make_pair(e.data.at("msg"), e.p));
    ++checked;
    if (!fresh && it->second.first != e.data.at("msg"))
      return fail(prop, e.step,
                  "view " + v + " round " + std::to_string(key.second) + ": " +
                      std::to_string(e.p) + " delivered " + e.data.at("msg").dump() +
                      ", " + std::to_string(it->second.second) + " delivered " +
                      it->second.first.dump());
  }
  return pass(prop, std::nullopt,
              std::to_string(checked) + " deliveries in " +
                  std::to_string(views.size()) + " proposed views");
}

Verdict smr_agreement(const Ctx& c, std::string_view prop) {
  const auto views = proposed_views(c);
  std::map<std::pair<std::string, std::uint64_t>, std::string> hash;
  std::set<std::tuple<std::int64_t, std::string, std::uint64_t>> applied;
  for (const TraceEvent& e : c.t.events) {
    if (e.kind != "apply") continue;
    const auto v = e.data.at("view").get<std::string>();
    if (!views.count(v)) continue;
    const auto r = e.data.at("rnd").get<std::uint64_t>();
    const auto h = e.data.at("hash").get<std::string>();
    if (!applied.emplace(e.p, v, r).second)
      return fail(prop, e.step,
                  std::to_string(e.p) + " applied view " + v + " round " +
                      std::to_string(r) + " twice");
    auto [it, fresh] = hash.emplace(std::make_pair(v, r), h);
    if (!fresh && it->second != h)
      return fail(prop, e.step,
                  "view " + v + " round " + std::to_string(r) +
                      ": state hashes differ");
  }
  return pass(prop, std::nullopt, std::to_string(applied.size()) + " applies");
}

Verdict single_proposal(const Ctx& c, std::string_view prop) {
  std::map<std::int64_t, const TraceEvent*> last;
  std::uint64_t last_fd_change = 0;
  bool any_change = false;
  for (const TraceEvent& e : c.t.events) {
    if (e.kind == "suspect" || e.kind == "trust" || e.kind == "crash") {
      last_fd_change = e.step;
      any_change = true;
    }
    if (e.kind != "propose") continue;
    auto it = last.find(e.p);
    if (it != last.end() && it->second->data.at("fd") == e.data.at("fd") &&
        !(any_change && last_fd_change >= it->second->step))
      return fail(prop, e.step,
                  std::to_string(e.p) + " proposed twice for failure detector " +
                      e.data.at("fd").dump());
    last[e.p] = &e;
  }
  return pass(prop, std::nullopt);
}

Verdict vs_liveness(const Ctx& c, std::string_view prop) {
  std::uint64_t last_crash = 0;
  for (const auto& [p, s] : c.crash_step) last_crash = std::max(last_crash, s);
  std::set<std::string> installed;
  for (const TraceEvent& e : c.t.events)
    if (e.kind == "install" && e.step > last_crash && c.active(e.p))
      installed.insert(e.data.at("view").get<std::string>());
  std::map<std::string, std::set<std::int64_t>> progressed;
  for (const TraceEvent& e : c.t.events) {
    if (e.kind != "apply" || e.step <= last_crash || !c.active(e.p)) continue;
    const auto v = e.data.at("view").get<std::string>();
    if (installed.count(v) && e.data.at("rnd").get<std::uint64_t>() >= 1)
      progressed[v].insert(e.p);
  }
  for (const auto& [v, who] : progressed)
    if (who.size() > c.n / 2)
      return pass(prop, last_crash, "view " + v + " made progress");
  return fail(prop, last_crash,
              installed.empty() ? "no view installed after the last crash"
                                : "no majority progress in a view installed "
                                  "after the last crash");
}

using Checker = Verdict (*)(const Ctx&, std::string_view);

const std::vector<std::pair<std::string, Checker>>& registry() {
  static const std::vector<std::pair<std::string, Checker>> r = {
      {"label-convergence", label_convergence},
      {"adoption-bounds", adoption_bounds},
      {"queue-bounds", queue_bounds},
      {"counter-monotonicity", counter_monotonicity},
      {"register-safety", register_safety},
      {"exactly-once-link", exactly_once_link},
      {"fd-completeness", fd_completeness},
      {"virtual-synchrony", virtual_synchrony},
      {"smr-agreement", smr_agreement},
      {"single-proposal", single_proposal},
      {"vs-liveness", vs_liveness},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& property_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

std::vector<std::string> properties_for(const Trace& trace) {
  const Ctx c(trace);
  const std::string w = c.workload();
  if (w == "labels")
    return {"label-convergence", "adoption-bounds", "queue-bounds",
            "fd-completeness"};
  if (w == "counters")
    return {"label-convergence", "adoption-bounds", "queue-bounds",
            "counter-monotonicity", "fd-completeness"};
  if (w == "register") return {"register-safety", "queue-bounds"};
  if (w == "vs")
    return {"virtual-synchrony", "smr-agreement", "single-proposal",
            "vs-liveness", "queue-bounds", "fd-completeness"};
  if (w == "link") return {"exactly-once-link"};
  return {"fd-completeness"};
}

Verdict check(const Trace& trace, std::string_view property) {
  for (const auto& [name, fn] : registry()) {
    if (name != property) continue;
    try {
      return fn(Ctx(trace), property);
    } catch (const json::exception& e) {
      return fail(property, std::nullopt,
                  std::string("malformed trace: ") + e.what());
    }
  }
  throw UnknownProperty("unknown property '" + std::string(property) + "'");
}

}  // namespace ssgc
