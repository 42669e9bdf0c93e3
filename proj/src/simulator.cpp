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


#include "ssgc/simulator.hpp"

#include <algorithm>
#include <map>

#include "ssgc/arbitrary.hpp"

namespace ssgc {

using nlohmann::json;

namespace {

json label_json(const Label& l) {
  return json{{"label", render_id(l)}, {"creator", l.creator()}};
}

json view_json(const View& v) {
  return json{{"view", view_key(v)}, {"set", v.set}};
}

json msg_json(const MsgArray& m) {
  json out = json::array();
  for (const auto& s : m) out.push_back(s ? json(*s) : json(nullptr));
  return out;
}

}  // namespace

json counter_json(const Counter& c) {
  return json{{"label", render_id(c.lbl)},
              {"seqn", seqn_to_string(c.seqn)},
              {"wid", c.wid}};
}

Processor::Processor(ProcessorId pid, const ScenarioConfig& cfg,
                     const ProtocolParams& params)
    : id(pid), fd(cfg.n, pid, cfg.fd_w()) {
  switch (cfg.workload) {
    case Workload::Labels:
      labels.emplace(params, pid);
      break;
    case Workload::Vs:
      vs.emplace(VsParams{cfg.n, cfg.pce, cfg.round_limit}, pid);
      [[fallthrough]];
    case Workload::Counters:
    case Workload::Register:
      counters.emplace(params, pid, ExhaustionThreshold{cfg.exhaustion});
      break;
    default:
      break;
  }
  links.resize(cfg.n);
  for (ProcessorId q = 0; q < cfg.n; ++q) {
    if (q == pid) continue;
    links[q].emplace(pid > q ? LinkEndpoint::Role::Sender
                             : LinkEndpoint::Role::Receiver,
                     cfg.link_capacity);
  }
  outbox.resize(cfg.n);
  vs_out.resize(cfg.n);
  data_seq.assign(cfg.n, 0);
}

Simulator::Simulator(ScenarioConfig cfg)
    : cfg_(std::move(cfg)),
      params_((cfg_.validate(), cfg_.protocol_params())),
      rng_(cfg_.seed) {
  for (ProcessorId p = 0; p < cfg_.n; ++p) procs_.emplace_back(p, cfg_, params_);
  chans_.assign(static_cast<std::size_t>(cfg_.n) * cfg_.n,
                Channel(cfg_.link_capacity));
  crash_done_.assign(cfg_.crashes.size(), false);
  expect_.assign(cfg_.n, std::nullopt);

  if (cfg_.workload == Workload::Register) {
    std::vector<RegisterOp> ops = cfg_.register_ops;
    for (std::uint32_t i = 0; i < cfg_.random_register_ops; ++i) {
      RegisterOp op;
      op.p = static_cast<ProcessorId>(rng_() % cfg_.n);
      op.op = rng_() % 2 ? OpKind::Write : OpKind::Read;
      if (op.op == OpKind::Write) op.value = "v" + std::to_string(i);
      ops.push_back(op);
    }
    for (const RegisterOp& op : ops) {
      if (cfg_.concurrent) {
        procs_[op.p].own_ops.push_back(op);
      } else {
        global_ops_.push_back(op);
      }
    }
  }

  if (cfg_.arbitrary) inject_arbitrary(*this);
  trace_.header = json{{"config", scenario_to_json(cfg_)},
                       {"m", params_.m},
                       {"k", params_.scheme.k},
                       {"own_queue_cap", params_.own_queue_cap},
                       {"other_queue_cap", params_.other_queue_cap},
                       {"fd_threshold", cfg_.fd_w()},
                       {"format", 1}};
  // Start from "everyone trusted" so an injected suspicion shows up as an
  // event at step 0.
  for (Processor& p : procs_) {
    for (ProcessorId q = 0; q < cfg_.n; ++q) p.trusted.insert(q);
    note_fd(p);
  }
}

void Simulator::emit(std::int64_t p, std::string kind, json data) {
  trace_.events.push_back(TraceEvent{step_, p, std::move(kind), std::move(data)});
}

double Simulator::uniform() {
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

std::optional<ProcessorId> Simulator::resolve_role(const std::string& role) {
  std::map<ProcessorId, int> votes;
  for (const Processor& p : procs_)
    if (p.active && p.vs && p.vs->crd()) ++votes[*p.vs->crd()];
  std::optional<ProcessorId> crd;
  int best = 0;
  for (auto [id, v] : votes) {
    if (v > best && procs_[id].active) {
      best = v;
      crd = id;
    }
  }
  auto protected_member = [&](ProcessorId id) {
    return cfg_.primary_majority &&
           std::count(cfg_.primary_majority->begin(),
                      cfg_.primary_majority->end(), id) > 0;
  };
  std::vector<ProcessorId> cands;
  if (role == "coordinator") {
    if (crd && !protected_member(*crd)) return crd;
    for (const Processor& p : procs_)
      if (p.active && !protected_member(p.id)) cands.push_back(p.id);
  } else {
    if (crd) {
      for (ProcessorId id : procs_[*crd].vs->own().view.set)
        if (id != *crd && id < cfg_.n && procs_[id].active &&
            !protected_member(id))
          cands.push_back(id);
    }
    if (cands.empty()) {
      for (const Processor& p : procs_)
        if (p.active && (!crd || p.id != *crd) && !protected_member(p.id))
          cands.push_back(p.id);
    }
  }
  if (cands.empty()) return std::nullopt;
  return cands[rng_() % cands.size()];
}

void Simulator::apply_crashes() {
  for (std::size_t i = 0; i < cfg_.crashes.size(); ++i) {
    if (crash_done_[i] || cfg_.crashes[i].step > step_) continue;
    crash_done_[i] = true;
    const CrashSpec& cs = cfg_.crashes[i];
    std::optional<ProcessorId> target;
    json who;
    if (auto* id = std::get_if<ProcessorId>(&cs.who)) {
      target = *id;
      who = *id;
    } else {
      who = std::get<std::string>(cs.who);
      target = resolve_role(std::get<std::string>(cs.who));
    }
    std::size_t active = 0;
    for (const Processor& p : procs_) active += p.active;
    if (!target || !procs_[*target].active || active <= cfg_.n / 2 + 1) {
      emit(-1, "crash_skipped", json{{"who", who}});
      continue;
    }
    procs_[*target].active = false;
    emit(*target, "crash", json{{"who", who}});
  }
}

bool Simulator::step() {
  if (step_ >= cfg_.steps) return false;
  ++step_;
  apply_crashes();
  if (uniform() < 0.5) {
    std::vector<std::size_t> busy;
    for (std::size_t i = 0; i < chans_.size(); ++i)
      if (!chans_[i].empty()) busy.push_back(i);
    if (!busy.empty()) {
      const std::size_t c = busy[rng_() % busy.size()];
      channel_action(static_cast<ProcessorId>(c / cfg_.n),
                     static_cast<ProcessorId>(c % cfg_.n));
      return true;
    }
  }
  std::vector<ProcessorId> alive;
  for (const Processor& p : procs_)
    if (p.active) alive.push_back(p.id);
  if (!alive.empty()) processor_action(procs_[alive[rng_() % alive.size()]]);
  return true;
}

void Simulator::run() {
  while (step()) {
  }
}

void Simulator::channel_action(ProcessorId from, ProcessorId to) {
  Channel& ch = channel(from, to);
  const double r = uniform();
  if (r < cfg_.drop) {
    ch.pop();
    return;
  }
  if (r < cfg_.drop + cfg_.duplicate && ch.duplicate_head()) return;
  const Packet pkt = ch.pop();
  deliver(from, to, pkt);
}

void Simulator::send_packets(ProcessorId from, ProcessorId to,
                             const std::vector<Packet>& pkts) {
  for (const Packet& p : pkts) channel(from, to).push(p);
}

void Simulator::deliver(ProcessorId from, ProcessorId to, const Packet& pkt) {
  Processor& p = procs_[to];
  if (!p.active) return;
  LinkEvents ev = p.links[from]->on_packet(pkt);
  send_packets(to, from, ev.out);
  if (ev.token) on_token(p, from, *ev.token);
  drain(p);
}

void Simulator::note_fd(Processor& p) {
  const std::set<ProcessorId> now = p.fd.trusted();
  for (ProcessorId q : p.trusted)
    if (!now.count(q)) emit(p.id, "suspect", json{{"q", q}});
  for (ProcessorId q : now)
    if (!p.trusted.count(q)) emit(p.id, "trust", json{{"q", q}});
  p.trusted = now;
}

void Simulator::on_token(Processor& p, ProcessorId from, const Payload& env) {
  emit(p.id, "token", json{{"from", from}});
  p.fd.on_token(from, env ? env->crd : std::nullopt);
  note_fd(p);
  if (env) {
    if (p.labels && env->labels) {
      const Label before = p.labels->own().value;
      const StepReport r =
          p.labels->receive(from, env->labels->first, env->labels->second);
      const Label& now = p.labels->own().value;
      if (r.purged) emit(p.id, "purge_stale");
      if (r.own_canceled) emit(p.id, "cancel", label_json(before));
      for (const Label& fresh : r.fresh_labels)
        emit(p.id, "create", label_json(fresh));
      if ((r.created || r.adopted) &&
          (r.fresh_labels.empty() || !(r.fresh_labels.back() == now)))
        emit(p.id, "adopt", label_json(now));
      if (r.overflows)
        emit(p.id, "overflow", json{{"count", r.overflows}});
    }
    if (p.counters && env->counters)
      p.counters->on_receive_counter(from, env->counters->first,
                                     env->counters->second);
    if (p.counters)
      for (const QuorumMsg& m : env->quorum)
        p.counters->on_quorum_message(from, m, p.outbox[from]);
    if (p.vs && env->vs) p.vs->on_message(from, *env->vs);
    if (env->data) emit(p.id, "deliver", json{{"from", from}, {"data", *env->data}});
  }
  send_packets(p.id, from, p.links[from]->send(build_envelope(p, from)));
}

Payload Simulator::build_envelope(Processor& p, ProcessorId to) {
  auto env = std::make_shared<Envelope>();
  if (p.vs) env->crd = p.vs->crd();
  if (p.labels) env->labels = p.labels->transmit(to);
  if (p.counters) {
    env->counters = p.counters->transmit(to);
    env->quorum = std::move(p.outbox[to]);
    p.outbox[to].clear();
    if (auto req = p.counters->request_for(to)) env->quorum.push_back(*req);
  }
  if (p.vs) {
    env->vs = std::move(p.vs_out[to]);
    p.vs_out[to].reset();
  }
  if (cfg_.workload == Workload::Link)
    env->data = "m" + std::to_string(++p.data_seq[to]);
  return env;
}

void Simulator::processor_action(Processor& p) {
  std::vector<ProcessorId> senders;
  for (ProcessorId q = 0; q < p.id; ++q) senders.push_back(q);
  const std::size_t pick = rng_() % (senders.size() + 1);
  if (pick < senders.size()) {
    const ProcessorId q = senders[pick];
    LinkEndpoint& link = *p.links[q];
    if (link.holding()) {
      send_packets(p.id, q, link.send(build_envelope(p, q)));
    } else {
      send_packets(p.id, q, link.on_timer());
    }
  } else {
    workload_tick(p);
  }
  drain(p);
}

void Simulator::workload_tick(Processor& p) {
  switch (cfg_.workload) {
    case Workload::Counters: {
      const bool writer = std::count(cfg_.writers.begin(), cfg_.writers.end(),
                                     p.id) > 0;
      if (!writer || p.ops_started >= cfg_.ops_per_writer || p.counters->busy())
        return;
      if (!cfg_.concurrent) {
        for (ProcessorId w : cfg_.writers)
          if (procs_[w].active && procs_[w].counters->busy()) return;
      }
      p.counters->start_increment();
      ++p.ops_started;
      return;
    }
    case Workload::Register:
      register_tick(p);
      return;
    case Workload::Vs: {
      p.vs->drop_stale_id(p.counters->own().value.lbl);
      VsState::Outgoing out = p.vs->iterate(p.fd.output(p.vs->crd()));
      for (ProcessorId j : out.to)
        if (j < cfg_.n) p.vs_out[j] = out.msg;
      if (p.vs->wants_counter() && !p.counters->busy()) {
        p.counters->start_increment();
        p.vs->counter_started();
        p.vs_owns_op = true;
      }
      return;
    }
    default:
      return;
  }
}

void Simulator::register_tick(Processor& p) {
  if (p.counters->busy()) return;
  std::optional<RegisterOp> op;
  if (cfg_.concurrent) {
    if (p.own_ops.empty()) return;
    op = p.own_ops.front();
    p.own_ops.pop_front();
  } else {
    if (global_op_running_ || global_ops_.empty()) return;
    if (global_ops_.front().p != p.id) {
      // The owner crashed: skip its operation.
      if (!procs_[global_ops_.front().p].active) global_ops_.pop_front();
      return;
    }
    op = global_ops_.front();
    global_ops_.pop_front();
    global_op_running_ = true;
  }
  expect_[p.id] = op->expect;
  if (op->op == OpKind::Write) {
    p.counters->start_increment(op->value);
  } else {
    p.counters->start_read();
  }
}

void Simulator::drain(Processor& p) {
  if (p.counters) {
    const StepReport r = p.counters->take_report();
    const Counter& own = p.counters->own().value;
    if (r.purged) emit(p.id, "purge_stale");
    if (r.own_canceled)
      emit(p.id, "cancel", label_json(r.canceled_label.value_or(own.lbl)));
    const char* reason =
        p.counters->changed_for_exhaustion() ? "exhausted" : "conflict";
    // Every label created during the step gets its own event; if the step
    // ended on some other label, that label was adopted.
    for (const Label& fresh : r.fresh_labels) {
      json d = label_json(fresh);
      d["counter"] = counter_json(fresh == own.lbl ? own : Counter{fresh, 0, p.id});
      d["full"] = render(fresh);
      d["reason"] = reason;
      emit(p.id, "create", d);
    }
    const bool ended_on_fresh =
        !r.fresh_labels.empty() && r.fresh_labels.back() == own.lbl;
    if ((r.created || r.adopted) && !ended_on_fresh) {
      json d = label_json(own.lbl);
      d["counter"] = counter_json(own);
      d["reason"] = reason;
      emit(p.id, "adopt", d);
    }
    if (r.overflows) emit(p.id, "overflow", json{{"count", r.overflows}});
    for (const OpNotice& nt : p.counters->take_notices()) {
      json d{{"op", to_string(nt.op)}, {"nonce", nt.nonce}};
      if (nt.value && nt.op != OpKind::Increment) d["value"] = *nt.value;
      switch (nt.kind) {
        case OpNotice::Kind::Started:
          if (nt.op == OpKind::Read && expect_[p.id])
            d["expect"] = *expect_[p.id];
          emit(p.id, "op_start", d);
          break;
        case OpNotice::Kind::WriteStarted:
          d["counter"] = counter_json(*nt.counter);
          emit(p.id, "write_start", d);
          break;
        case OpNotice::Kind::Completed:
          if (nt.counter) {
            d["counter"] = counter_json(*nt.counter);
          } else {
            d["absent"] = true;
          }
          emit(p.id, "op_done", d);
          if (p.vs && p.vs_owns_op && nt.op == OpKind::Increment) {
            p.vs_owns_op = false;
            if (nt.counter) p.vs->counter_done(*nt.counter);
          }
          if (cfg_.workload == Workload::Register && !cfg_.concurrent)
            global_op_running_ = false;
          break;
      }
    }
  }
  if (p.vs) {
    for (const VsEvent& ev : p.vs->take_events()) {
      switch (ev.kind) {
        case VsEvent::Kind::Propose: {
          json d = view_json(ev.view);
          d["fd"] = ev.fd;
          emit(p.id, "propose", d);
          break;
        }
        case VsEvent::Kind::Install:
          emit(p.id, "install", view_json(ev.view));
          break;
        case VsEvent::Kind::Deliver:
          emit(p.id, "vs_deliver", json{{"view", view_key(ev.view)},
                                        {"rnd", ev.rnd},
                                        {"msg", msg_json(ev.msg)}});
          break;
        case VsEvent::Kind::Apply: {
          char buf[24];
          std::snprintf(buf, sizeof buf, "%016llx",
                        static_cast<unsigned long long>(ev.hash));
          emit(p.id, "apply", json{{"view", view_key(ev.view)},
                                   {"rnd", ev.rnd},
                                   {"hash", buf}});
          break;
        }
      }
    }
  }
}

json Simulator::snapshot() const {
  json procs = json::array();
  for (const Processor& p : procs_) {
    json s{{"id", p.id}, {"active", p.active}, {"trusted", p.fd.trusted()}};
    if (p.labels) s["ml"] = render_id(p.labels->own().value);
    if (p.counters) {
      s["ml"] = render_id(p.counters->own().value.lbl);
      s["counter"] = counter_json(p.counters->own().value);
    }
    if (p.vs) {
      const Replica& r = p.vs->own();
      s["view"] = view_key(r.view);
      s["status"] = to_string(r.status);
      s["rnd"] = r.rnd;
      s["crd"] = p.vs->crd() ? json(*p.vs->crd()) : json(nullptr);
    }
    procs.push_back(s);
  }
  std::size_t in_flight = 0;
  for (const Channel& c : chans_) in_flight += c.size();
  return json{{"step", step_}, {"processors", procs}, {"in_flight", in_flight}};
}

Trace Simulator::finish() {
  trace_.snapshot = snapshot();
  return std::move(trace_);
}

Trace run_scenario(const ScenarioConfig& cfg) {
  Simulator sim(cfg);
  sim.run();
  return sim.finish();
}

}  // namespace ssgc
