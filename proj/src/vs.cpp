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


#include "ssgc/vs.hpp"

#include <map>

#include "ssgc/hash.hpp"

namespace ssgc {

std::string view_key(const View& v) {
  return v.id ? render_id(*v.id) : std::string("none");
}

const char* to_string(VsStatus s) {
  switch (s) {
    case VsStatus::Multicast: return "Multicast";
    case VsStatus::Propose: return "Propose";
    case VsStatus::Install: return "Install";
  }
  return "?";
}

AutomatonState apply_step(const AutomatonState& s, const MsgArray& msg) {
  Fnv1a h;
  h.u64(s.hash).u64(s.count);
  for (std::size_t j = 0; j < msg.size(); ++j) {
    h.u64(j);
    if (msg[j]) {
      h.u64(1).str(*msg[j]);
    } else {
      h.u64(0);
    }
  }
  return AutomatonState{h.value(), s.count + 1};
}

namespace {

bool id_leq(const std::optional<Counter>& a, const std::optional<Counter>& b) {
  if (!a) return true;
  if (!b) return false;
  const LabelOrdering o = cmp_counter(*a, *b);
  return o == LabelOrdering::Less || o == LabelOrdering::Equal;
}

bool majority(std::size_t count, std::uint32_t n) { return count > n / 2; }

}  // namespace

std::set<ProcessorId> seem_crd(const std::vector<Replica>& rep,
                               const std::vector<FdEntry>& fdin,
                               std::uint32_t n) {
  std::set<ProcessorId> fd;
  std::map<ProcessorId, std::optional<ProcessorId>> crd;
  for (const FdEntry& e : fdin) {
    fd.insert(e.pid);
    crd[e.pid] = e.crd;
  }
  std::set<ProcessorId> out;
  for (ProcessorId l : fd) {
    if (l >= rep.size()) continue;
    const Replica& r = rep[l];
    if (!r.prop_view.id || r.prop_view.id->wid != l) continue;
    if (!majority(r.prop_view.set.size(), n) || !majority(r.fd.size(), n))
      continue;
    if (!r.prop_view.set.count(l)) continue;
    bool symmetric = true;
    for (ProcessorId k : fd) {
      if (k >= rep.size()) continue;
      if (r.prop_view.set.count(k) != rep[k].fd.count(l)) {
        symmetric = false;
        break;
      }
    }
    if (!symmetric) continue;
    const bool self_crd = crd[l] == std::optional<ProcessorId>(l);
    if (r.status == VsStatus::Multicast &&
        (!(r.view == r.prop_view) || !self_crd))
      continue;
    if (r.status == VsStatus::Install && !self_crd) continue;
    out.insert(l);
  }
  return out;
}

std::set<ProcessorId> val_crd(const std::set<ProcessorId>& seem,
                              const std::vector<Replica>& rep) {
  std::set<ProcessorId> out;
  for (ProcessorId l : seem) {
    bool top = true;
    for (ProcessorId k : seem)
      if (!id_leq(rep[k].prop_view.id, rep[l].prop_view.id)) top = false;
    if (top) out.insert(l);
  }
  return out;
}

std::optional<ProcessorId> most_advanced(const std::vector<Replica>& rep,
                                         const std::set<ProcessorId>& members,
                                         ProcessorId coordinator) {
  std::vector<ProcessorId> order;
  if (members.count(coordinator)) order.push_back(coordinator);
  for (ProcessorId j : members)
    if (j != coordinator) order.push_back(j);
  std::optional<ProcessorId> best;
  for (ProcessorId j : order) {
    if (j >= rep.size() || !rep[j].state) continue;
    if (!best) {
      best = j;
      continue;
    }
    const Replica& a = rep[j];
    const Replica& b = rep[*best];
    bool greater = false;
    if (!b.view.id) {
      greater = a.view.id.has_value() || a.rnd > b.rnd;
    } else if (a.view.id) {
      const LabelOrdering o = cmp_counter(*a.view.id, *b.view.id);
      greater = o == LabelOrdering::Greater ||
                (o == LabelOrdering::Equal && a.rnd > b.rnd);
    }
    if (greater) best = j;
  }
  return best;
}

VsState::VsState(const VsParams& params, ProcessorId self)
    : params_(params), self_(self) {
  if (self >= params.n) throw std::invalid_argument("self id out of range");
  if (params.pce == 0) throw std::invalid_argument("pce must be >= 1");
  Replica blank;
  blank.state = AutomatonState{};
  blank.msg.assign(params.n, std::nullopt);
  rep_.assign(params.n, blank);
  rep_[self].fd = {self};
}

void VsState::on_message(ProcessorId from, const Replica& m) {
  if (from >= params_.n || from == self_) return;
  rep_[from] = m;
  rep_[from].msg.resize(params_.n);
}

void VsState::counter_done(const Counter& c) {
  inc_pending_ = false;
  ready_id_ = c;
}

void VsState::drop_stale_id(const Label& current) {
  if (ready_id_ && !(ready_id_->lbl == current)) ready_id_.reset();
}

std::vector<VsEvent> VsState::take_events() {
  std::vector<VsEvent> out;
  out.swap(events_);
  return out;
}

std::string VsState::fetch() {
  return "p" + std::to_string(self_) + "." + std::to_string(fetched++);
}

void VsState::note_apply(const View& v, std::uint64_t rnd, const MsgArray* msg,
                         const AutomatonState& s) {
  auto key = std::make_pair(view_key(v), rnd);
  if (last_applied_ == key) return;
  last_applied_ = key;
  if (msg) {
    VsEvent d;
    d.kind = VsEvent::Kind::Deliver;
    d.view = v;
    d.rnd = rnd;
    d.msg = *msg;
    events_.push_back(std::move(d));
  }
  VsEvent a;
  a.kind = VsEvent::Kind::Apply;
  a.view = v;
  a.rnd = rnd;
  a.hash = s.hash;
  events_.push_back(std::move(a));
}

bool VsState::propose_guard(const std::set<ProcessorId>& fd,
                            const std::set<ProcessorId>& valid) const {
  const std::uint32_t n = params_.n;
  if (!majority(fd.size(), n)) return false;
  const Replica& me = rep_[self_];
  if (valid.size() != 1) {
    std::size_t support = 0;
    for (ProcessorId k : fd)
      if (rep_[k].fd.count(self_) && rep_[k].no_crd) ++support;
    if (majority(support, n)) return true;
  }
  if (valid == std::set<ProcessorId>{self_} && fd != me.prop_view.set) {
    std::size_t adopted = 0;
    for (ProcessorId k : fd)
      if (rep_[k].prop_view == me.prop_view) ++adopted;
    if (majority(adopted, n)) return true;
  }
  if (valid == std::set<ProcessorId>{self_} &&
      me.status == VsStatus::Multicast) {
    if (me.rnd >= params_.round_limit) return true;
    for (ProcessorId j : me.view.set)
      if (j < rep_.size() && rep_[j].view == me.view && rep_[j].rnd > me.rnd)
        return true;
  }
  return false;
}

bool VsState::round_end() const {
  const Replica& me = rep_[self_];
  if (me.status == VsStatus::Multicast) {
    for (ProcessorId j : me.view.set) {
      if (j >= rep_.size()) return false;
      const Replica& r = rep_[j];
      if (!(r.view == me.view) || r.status != me.status || r.rnd != me.rnd)
        return false;
    }
    return true;
  }
  for (ProcessorId j : me.prop_view.set) {
    if (j >= rep_.size()) return false;
    const Replica& r = rep_[j];
    if (!(r.prop_view == me.prop_view) || r.status != me.status) return false;
  }
  return true;
}

void VsState::coordinator_step() {
  Replica& me = rep_[self_];
  switch (me.status) {
    case VsStatus::Multicast: {
      MsgArray m(params_.n);
      for (ProcessorId j = 0; j < params_.n; ++j)
        if (me.view.set.count(j)) m[j] = rep_[j].input;
      me.state = apply_step(me.state.value_or(AutomatonState{}), m);
      me.msg = m;
      ++me.rnd;
      me.input = fetch();
      note_apply(me.view, me.rnd, &me.msg, *me.state);
      break;
    }
    case VsStatus::Propose: {
      if (auto j = most_advanced(rep_, me.prop_view.set, self_)) {
        if (*j != self_) {
          me.state = rep_[*j].state;
          me.msg = rep_[*j].msg;
        }
      }
      if (!me.state) me.state = AutomatonState{};
      me.status = VsStatus::Install;
      break;
    }
    case VsStatus::Install: {
      me.view = me.prop_view;
      me.status = VsStatus::Multicast;
      me.rnd = 0;
      VsEvent ev;
      ev.kind = VsEvent::Kind::Install;
      ev.view = me.view;
      events_.push_back(ev);
      note_apply(me.view, 0, nullptr, *me.state);
      break;
    }
  }
}

void VsState::follower_step(ProcessorId l) {
  Replica& me = rep_[self_];
  const Replica& r = rep_[l];
  switch (r.status) {
    case VsStatus::Multicast: {
      std::optional<AutomatonState> next = r.state;
      if (!next) {
        // Elided state: only reconstructible from the preceding round.
        if (!me.state || !(me.view == r.view) || me.rnd + 1 != r.rnd) return;
        next = apply_step(*me.state, r.msg);
      }
      const bool new_view = !(me.view == r.view);
      Replica copy = r;
      copy.state = next;
      copy.fd = me.fd;
      copy.no_crd = me.no_crd;
      me = std::move(copy);
      if (r.rnd == 0) {
        if (new_view) {
          VsEvent ev;
          ev.kind = VsEvent::Kind::Install;
          ev.view = me.view;
          events_.push_back(ev);
        }
        note_apply(me.view, 0, nullptr, *me.state);
      } else {
        note_apply(me.view, me.rnd, &me.msg, *me.state);
      }
      me.input = fetch();
      break;
    }
    case VsStatus::Install: {
      if (!r.state) return;
      Replica copy = r;
      copy.fd = me.fd;
      copy.no_crd = me.no_crd;
      me = std::move(copy);
      break;
    }
    case VsStatus::Propose:
      me.status = r.status;
      me.prop_view = r.prop_view;
      break;
  }
}

VsState::Outgoing VsState::iterate(const std::vector<FdEntry>& fdin) {
  std::set<ProcessorId> fd;
  for (const FdEntry& e : fdin) fd.insert(e.pid);
  rep_[self_].fd = fd;

  const std::set<ProcessorId> seem = seem_crd(rep_, fdin, params_.n);
  const std::set<ProcessorId> valid = val_crd(seem, rep_);
  const bool no_crd = valid.size() != 1;
  rep_[self_].no_crd = no_crd;
  crd_ = no_crd ? std::nullopt : std::optional<ProcessorId>(*valid.begin());

  if (propose_guard(fd, valid)) {
    if (ready_id_) {
      Replica& me = rep_[self_];
      me.status = VsStatus::Propose;
      me.prop_view = View{*ready_id_, fd};
      ready_id_.reset();
      want_inc_ = false;
      VsEvent ev;
      ev.kind = VsEvent::Kind::Propose;
      ev.view = me.prop_view;
      ev.fd = fd;
      events_.push_back(ev);
    } else {
      want_inc_ = true;
    }
  } else {
    want_inc_ = false;
    ready_id_.reset();
    if (valid == std::set<ProcessorId>{self_}) {
      if (round_end()) coordinator_step();
    } else if (valid.size() == 1) {
      const ProcessorId l = *valid.begin();
      const Replica& r = rep_[l];
      const Replica& me = rep_[self_];
      if ((r.rnd == 0 && !(r.view == me.view)) || me.rnd < r.rnd ||
          !(r.view == r.prop_view))
        follower_step(l);
    }
  }

  const Replica& me = rep_[self_];
  auto m = std::make_shared<Replica>(me);
  if (me.status == VsStatus::Multicast && me.rnd % params_.pce != 0)
    m->state.reset();
  Outgoing out;
  out.msg = std::move(m);
  out.to = seem;
  if (valid == std::set<ProcessorId>{self_})
    out.to.insert(me.prop_view.set.begin(), me.prop_view.set.end());
  if (no_crd || me.status == VsStatus::Propose)
    out.to.insert(fd.begin(), fd.end());
  out.to.erase(self_);
  return out;
}

}  // namespace ssgc
