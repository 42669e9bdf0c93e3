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


#include "ssgc/counter.hpp"

#include <algorithm>
#include <stdexcept>

namespace ssgc {

std::string seqn_to_string(Seqn v) {
  if (v == 0) return "0";
  std::string out;
  while (v > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Seqn seqn_from_string(std::string_view text) {
  if (text.empty() || text.size() > 39)
    throw std::invalid_argument("seqn: expected a decimal number");
  Seqn v = 0;
  for (char ch : text) {
    if (ch < '0' || ch > '9')
      throw std::invalid_argument("seqn: expected a decimal number");
    const Seqn next = v * 10 + static_cast<Seqn>(ch - '0');
    if (next / 10 != v) throw std::invalid_argument("seqn: out of range");
    v = next;
  }
  return v;
}

LabelOrdering cmp_counter(const Counter& a, const Counter& b) {
  const LabelOrdering o = cmp_label(a.lbl, b.lbl);
  if (o != LabelOrdering::Equal) return o;
  if (a.seqn != b.seqn)
    return a.seqn < b.seqn ? LabelOrdering::Less : LabelOrdering::Greater;
  if (a.wid != b.wid)
    return a.wid < b.wid ? LabelOrdering::Less : LabelOrdering::Greater;
  return LabelOrdering::Equal;
}

std::string render_id(const Counter& c) {
  return render_id(c.lbl) + "/" + seqn_to_string(c.seqn) + "/" +
         std::to_string(c.wid);
}

const char* to_string(OpKind k) {
  switch (k) {
    case OpKind::Increment: return "increment";
    case OpKind::Write: return "write";
    case OpKind::Read: return "read";
  }
  return "?";
}

std::size_t CounterTraits::store(BoundedQueue<CounterPair>& q,
                                 const CounterPair& p) {
  for (std::size_t i = 0; i < q.size(); ++i) {
    CounterPair& e = q[i];
    if (!(e.value.lbl == p.value.lbl)) continue;
    if (e.legit() && !p.legit()) {
      e = p;
    } else if (e.legit() == p.legit() &&
               cmp_counter(p.value, e.value) == LabelOrdering::Greater) {
      e = p;
    }
    q.move_to_front(i);
    return 0;
  }
  return q.push_front(p) ? 1 : 0;
}

CounterState::CounterState(const ProtocolParams& params, ProcessorId self,
                           ExhaustionThreshold threshold)
    : PairStore<CounterTraits>(params, self), threshold_(threshold) {
  if (threshold_.limit < 2)
    throw std::invalid_argument("exhaustion threshold must be >= 2");
}

void CounterState::merge(const StepReport& r) {
  report_.purged |= r.purged;
  report_.own_canceled |= r.own_canceled;
  report_.adopted |= r.adopted;
  report_.created |= r.created;
  if (!report_.canceled_label) report_.canceled_label = r.canceled_label;
  report_.fresh_labels.insert(report_.fresh_labels.end(),
                              r.fresh_labels.begin(), r.fresh_labels.end());
  if (r.created || r.adopted) {
    // A label taken while recovering from exhaustion passes the reason on.
    own_from_exhaustion_ = own_exhausted_ || own_from_exhaustion_ ||
                           (last_own_ && exhaustion_seen(*last_own_));
    pending_exhaustion_ |= own_from_exhaustion_;
    own_exhausted_ = false;
  }
  last_own_ = max_[self_].value.lbl;
  report_.overflows += r.overflows;
}

StepReport CounterState::take_report() {
  StepReport r = report_;
  report_ = StepReport{};
  changed_for_exhaustion_ = pending_exhaustion_;
  pending_exhaustion_ = false;
  return r;
}

std::vector<OpNotice> CounterState::take_notices() {
  std::vector<OpNotice> out;
  out.swap(notices_);
  return out;
}

void CounterState::cancel_exhausted_max() {
  const Label own = max_[self_].value.lbl;
  auto cancel = [&](CounterPair& p) {
    if (!p.legit() || !exhausted(p, threshold_)) return;
    p.cancel = p.value;
    if (p.value.lbl == own) own_exhausted_ = true;
  };
  for (CounterPair& p : max_) cancel(p);
  for (auto& q : stored_)
    for (CounterPair& p : q) cancel(p);
}

StepReport CounterState::on_receive_counter(ProcessorId from,
                                            CounterPair sent_max,
                                            CounterPair last_sent) {
  if (sent_max.legit() && exhausted(sent_max, threshold_)) {
    sent_max.cancel = sent_max.value;
    if (sent_max.value.lbl == max_[self_].value.lbl) own_exhausted_ = true;
  }
  if (last_sent.legit() && exhausted(last_sent, threshold_))
    last_sent.cancel = last_sent.value;
  cancel_exhausted_max();
  StepReport r = receive(from, sent_max, last_sent);
  merge(r);
  return r;
}

StepReport CounterState::find_max_counter() {
  cancel_exhausted_max();
  const Label before = max_[self_].value.lbl;
  StepReport r = process();
  const Label& own = max_[self_].value.lbl;
  std::optional<Counter> best;
  auto consider = [&](const CounterPair& p) {
    if (!p.legit() || exhausted(p, threshold_) || !(p.value.lbl == own))
      return;
    if (!best || cmp_counter(p.value, *best) == LabelOrdering::Greater)
      best = p.value;
  };
  for (const CounterPair& p : max_) consider(p);
  const auto& q = stored_[own.creator()];
  if (auto at = find_key(q, own)) consider(q[*at]);
  if (best) max_[self_] = CounterPair{*best, std::nullopt};
  if (!r.created) r.adopted = !(max_[self_].value.lbl == before);
  merge(r);
  return r;
}

bool CounterState::exhaustion_seen(const Label& l) const {
  auto hit = [&](const CounterPair& p) {
    return p.value.lbl == l &&
           ((p.cancel && p.cancel->seqn >= threshold_.limit) ||
            exhausted(p, threshold_));
  };
  for (const CounterPair& p : max_)
    if (hit(p)) return true;
  const auto& q = stored_[l.creator()];
  auto at = find_key(q, l);
  return at && hit(q[*at]);
}

bool CounterState::label_canceled_here(const Label& l) const {
  const auto& q = stored_[l.creator()];
  auto at = find_key(q, l);
  return at && !q[*at].legit();
}

bool CounterState::usable(const CounterPair& p) const {
  return p.legit() && !exhausted(p, threshold_) &&
         !label_canceled_here(p.value.lbl);
}

ReadReply CounterState::answer_read(const QuorumRead& q) {
  find_max_counter();
  ReadReply r{q.nonce, max_[self_], std::nullopt};
  if (q.want_value) {
    if (slot_) {
      r.pair = CounterPair{slot_->counter, std::nullopt};
      if (label_canceled_here(slot_->counter.lbl))
        r.pair.cancel = slot_->counter;
      r.value = slot_->value;
    }
  }
  return r;
}

void CounterState::accept_write(ProcessorId from, const QuorumWrite& w) {
  const LabelOrdering o = cmp_counter(w.counter, max_[from].value);
  if (o == LabelOrdering::Greater || o == LabelOrdering::Incomparable)
    max_[from] = CounterPair{w.counter, std::nullopt};
  report_.overflows += CounterTraits::store(
      stored_[w.counter.lbl.creator()], CounterPair{w.counter, std::nullopt});
  if (max_[from].legit() && exhausted(max_[from], threshold_)) {
    max_[from].cancel = max_[from].value;
    if (max_[from].value.lbl == max_[self_].value.lbl) own_exhausted_ = true;
  }
  if (w.value) {
    const LabelOrdering so =
        slot_ ? cmp_counter(w.counter, slot_->counter) : LabelOrdering::Greater;
    if (so == LabelOrdering::Greater || so == LabelOrdering::Incomparable)
      slot_ = RegisterSlot{w.counter, *w.value};
  }
}

void CounterState::on_quorum_message(ProcessorId from, const QuorumMsg& msg,
                                     std::vector<QuorumMsg>& out) {
  if (from >= n() || from == self_) return;
  if (auto* q = std::get_if<QuorumRead>(&msg)) {
    out.emplace_back(answer_read(*q));
  } else if (auto* r = std::get_if<ReadReply>(&msg)) {
    read_reply(from, *r);
  } else if (auto* w = std::get_if<QuorumWrite>(&msg)) {
    accept_write(from, *w);
    out.emplace_back(WriteAck{w->nonce});
  } else if (auto* a = std::get_if<WriteAck>(&msg)) {
    write_ack(from, a->nonce);
  }
}

bool CounterState::start_increment(std::optional<std::string> value) {
  if (busy()) return false;
  begin_read(value ? OpKind::Write : OpKind::Increment, std::move(value));
  return true;
}

bool CounterState::start_read() {
  if (busy()) return false;
  begin_read(OpKind::Read, std::nullopt);
  return true;
}

void CounterState::begin_read(OpKind kind, std::optional<std::string> value) {
  op_ = kind;
  phase_ = OpPhase::Reading;
  ++nonce_;
  answered_.clear();
  replies_.clear();
  writing_.reset();
  pending_value_ = std::move(value);
  notices_.push_back(OpNotice{OpNotice::Kind::Started, op_, nonce_,
                              std::nullopt, pending_value_});
  read_reply(self_, answer_read(QuorumRead{nonce_, op_ == OpKind::Read}));
}

void CounterState::read_reply(ProcessorId from, const ReadReply& reply) {
  if (phase_ != OpPhase::Reading || reply.nonce != nonce_) return;
  if (!answered_.insert(from).second) return;
  if (op_ != OpKind::Read && from != self_) max_[from] = reply.pair;
  replies_.push_back(reply);
  if (answered_.size() >= quorum().size()) finish_read_phase();
}

void CounterState::finish_read_phase() {
  if (op_ != OpKind::Read) {
    for (int i = 0; i < 4; ++i) {
      find_max_counter();
      if (max_[self_].legit() && !exhausted(max_[self_], threshold_)) break;
    }
    const Counter& cur = max_[self_].value;
    begin_write(Counter{cur.lbl, cur.seqn + 1, self_}, pending_value_);
    return;
  }
  // Replies from processors that never stored a value carry no register
  // state; they only count when nobody has one (the empty default).
  bool any_value = false;
  for (const ReadReply& r : replies_)
    if (r.value && usable(r.pair)) any_value = true;
  auto eligible = [&](const ReadReply& r) {
    return usable(r.pair) && (!any_value || r.value);
  };
  const ReadReply* best = nullptr;
  bool incomparable = false;
  for (const ReadReply& r : replies_) {
    if (!eligible(r)) continue;
    if (!best) {
      best = &r;
      continue;
    }
    const LabelOrdering o = cmp_counter(r.pair.value, best->pair.value);
    if (o == LabelOrdering::Greater) best = &r;
    if (o == LabelOrdering::Incomparable) incomparable = true;
  }
  if (best && !incomparable) {
    for (const ReadReply& r : replies_)
      if (eligible(r) && cmp_counter(r.pair.value, best->pair.value) ==
                             LabelOrdering::Incomparable)
        incomparable = true;
  }
  if (!best || incomparable) {
    phase_ = OpPhase::Idle;
    notices_.push_back(OpNotice{OpNotice::Kind::Completed, op_, nonce_,
                                std::nullopt, std::nullopt});
    return;
  }
  begin_write(best->pair.value, best->value.value_or(std::string()));
}

void CounterState::begin_write(Counter c, std::optional<std::string> value) {
  phase_ = OpPhase::Writing;
  answered_.clear();
  writing_ = c;
  pending_value_ = std::move(value);
  notices_.push_back(OpNotice{OpNotice::Kind::WriteStarted, op_, nonce_, c,
                              pending_value_});
  accept_write(self_, QuorumWrite{nonce_, c, pending_value_});
  write_ack(self_, nonce_);
}

void CounterState::write_ack(ProcessorId from, std::uint64_t nonce) {
  if (phase_ != OpPhase::Writing || nonce != nonce_) return;
  if (!answered_.insert(from).second) return;
  if (answered_.size() < quorum().size()) return;
  if (op_ != OpKind::Read) {
    max_[self_] = CounterPair{*writing_, std::nullopt};
    report_.overflows += CounterTraits::store(
        stored_[writing_->lbl.creator()], max_[self_]);
  }
  phase_ = OpPhase::Idle;
  notices_.push_back(OpNotice{OpNotice::Kind::Completed, op_, nonce_,
                              writing_, pending_value_});
}

std::optional<QuorumMsg> CounterState::request_for(ProcessorId peer) const {
  if (peer == self_ || answered_.count(peer)) return std::nullopt;
  if (phase_ == OpPhase::Reading)
    return QuorumMsg{QuorumRead{nonce_, op_ == OpKind::Read}};
  if (phase_ == OpPhase::Writing)
    return QuorumMsg{QuorumWrite{nonce_, *writing_, pending_value_}};
  return std::nullopt;
}

}  // namespace ssgc
