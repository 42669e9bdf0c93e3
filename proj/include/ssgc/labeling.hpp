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


#ifndef SSGC_LABELING_HPP_
#define SSGC_LABELING_HPP_

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ssgc/label.hpp"

namespace ssgc {

/// Queue sizing for the labeling protocol.
struct ProtocolParams {
  std::uint32_t n = 1;
  std::uint64_t m = 0;  // label pairs that can be in transit system-wide
  std::size_t own_queue_cap = 1;
  std::size_t other_queue_cap = 1;
  SchemeParams scheme;

  /// Capacities that cover both queue bounds, k = 2 * own_queue_cap.
  static ProtocolParams safe(std::uint32_t n, std::uint64_t m);
};

/// A value plus its optional canceling value. Legit iff `cancel` is empty.
template <class V>
struct CancelPair {
  V value;
  std::optional<V> cancel;

  bool legit() const { return !cancel.has_value(); }
  friend bool operator==(const CancelPair&, const CancelPair&) = default;
};

/// Fixed-capacity most-recently-used queue. Index 0 is the front.
template <class T>
class BoundedQueue {
 public:
  explicit BoundedQueue(std::size_t cap = 1) : cap_(cap) {}

  std::size_t capacity() const { return cap_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  void clear() { items_.clear(); }

  /// Returns true when the back element had to be evicted.
  bool push_front(T v) {
    items_.push_front(std::move(v));
    if (items_.size() > cap_) {
      items_.pop_back();
      return true;
    }
    return false;
  }
  void move_to_front(std::size_t i) {
    if (i == 0) return;
    T v = std::move(items_[i]);
    items_.erase(items_.begin() + static_cast<std::ptrdiff_t>(i));
    items_.push_front(std::move(v));
  }
  void erase(std::size_t i) {
    items_.erase(items_.begin() + static_cast<std::ptrdiff_t>(i));
  }

  T& operator[](std::size_t i) { return items_[i]; }
  const T& operator[](std::size_t i) const { return items_[i]; }
  auto begin() { return items_.begin(); }
  auto end() { return items_.end(); }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

 private:
  std::size_t cap_;
  std::deque<T> items_;
};

/// What one receive (or bookkeeping) step did to the local maximum.
struct StepReport {
  bool purged = false;       // stale storage was emptied
  bool own_canceled = false;  // previous own maximum got canceled
  bool adopted = false;      // own maximum now carries another label
  bool created = false;      // a fresh label was created
  std::optional<Label> canceled_label;
  std::vector<Label> fresh_labels;
  std::size_t overflows = 0;
};

/**
 * Per-processor storage and receive logic shared by labels and counters.
 *
 * Traits supply:
 *   Value                       stored type
 *   key(v) -> const Label&      label the value is filed under
 *   cmp(a, b) -> LabelOrdering  full order used when adopting
 *   fresh(label, self) -> Value value for a newly created label
 *   store(queue, pair)          insertion rule, returns evictions
 */
template <class Traits>
class PairStore {
 public:
  using Value = typename Traits::Value;
  using Pair = CancelPair<Value>;
  using Queue = BoundedQueue<Pair>;

  /// Clean start: every entry and the own queue hold the first label.
  PairStore(const ProtocolParams& params, ProcessorId self)
      : params_(params), self_(self) {
    if (self >= params.n) throw std::invalid_argument("self id out of range");
    for (ProcessorId j = 0; j < params.n; ++j)
      stored_.emplace_back(j == self ? params.own_queue_cap
                                     : params.other_queue_cap);
    const Label first = next_label(params.scheme, 0, {});
    const Pair init{Traits::fresh(first, 0), std::nullopt};
    max_.assign(params.n, init);
    stored_[0].push_front(init);
  }

  const ProtocolParams& params() const { return params_; }
  ProcessorId self() const { return self_; }
  std::uint32_t n() const { return params_.n; }

  const std::vector<Pair>& max() const { return max_; }
  std::vector<Pair>& max() { return max_; }
  const Pair& own() const { return max_[self_]; }
  const std::vector<Queue>& stored() const { return stored_; }
  std::vector<Queue>& stored() { return stored_; }

  /// Outgoing diffusion message for `to`.
  std::pair<Pair, Pair> transmit(ProcessorId to) const {
    return {max_[self_], max_[to]};
  }

  bool stale_info() const {
    for (ProcessorId j = 0; j < n(); ++j) {
      const Queue& q = stored_[j];
      int legit = 0;
      for (std::size_t a = 0; a < q.size(); ++a) {
        if (Traits::key(q[a].value).creator() != j) return true;
        if (q[a].legit() && ++legit > 1) return true;
        for (std::size_t b = a + 1; b < q.size(); ++b)
          if (Traits::key(q[a].value) == Traits::key(q[b].value)) return true;
      }
    }
    return false;
  }

  StepReport receive(ProcessorId from, const Pair& sent_max,
                     const Pair& last_sent) {
    const Label before = Traits::key(max_[self_].value);
    const bool was_legit = max_[self_].legit();
    max_[from] = sent_max;
    if (!last_sent.legit() &&
        Traits::key(max_[self_].value) == Traits::key(last_sent.value))
      max_[self_] = last_sent;
    return body(before, was_legit);
  }

  /// Receive body without a message.
  StepReport process() {
    return body(Traits::key(max_[self_].value), max_[self_].legit());
  }

 protected:
  Queue& queue_of(const Value& v) { return stored_[Traits::key(v).creator()]; }

  std::optional<std::size_t> find_key(const Queue& q, const Label& k) const {
    for (std::size_t i = 0; i < q.size(); ++i)
      if (Traits::key(q[i].value) == k) return i;
    return std::nullopt;
  }

  StepReport body(const Label& before, bool was_legit) {
    StepReport r;
    if (stale_info()) {
      for (Queue& q : stored_) q.clear();
      r.purged = true;
    }
    for (ProcessorId j = 0; j < n(); ++j)
      r.overflows += Traits::store(queue_of(max_[j].value), max_[j]);

    for (Queue& q : stored_) {
      for (std::size_t a = 0; a < q.size(); ++a) {
        if (!q[a].legit()) continue;
        const Label& mine = Traits::key(q[a].value);
        for (std::size_t b = 0; b < q.size(); ++b) {
          if (b == a) continue;
          const LabelOrdering o = cmp_label(Traits::key(q[b].value), mine);
          if (o != LabelOrdering::Less && o != LabelOrdering::Equal) {
            q[a].cancel = q[b].value;
            break;
          }
        }
      }
    }

    for (ProcessorId j = 0; j < n(); ++j) {
      if (max_[j].legit()) continue;
      Queue& q = queue_of(max_[j].value);
      auto at = find_key(q, Traits::key(max_[j].value));
      if (at && q[*at].legit()) q[*at] = max_[j];
    }

    for (Queue& q : stored_) remove_doubles(q);

    for (ProcessorId j = 0; j < n(); ++j) {
      if (!max_[j].legit()) continue;
      Queue& q = queue_of(max_[j].value);
      auto at = find_key(q, Traits::key(max_[j].value));
      if (at && !q[*at].legit()) {
        max_[j] = q[*at];
        q.move_to_front(*at);
      }
    }

    const bool own_legit_now = max_[self_].legit();
    r.own_canceled = was_legit && !own_legit_now &&
                     Traits::key(max_[self_].value) == before;
    if (r.own_canceled) r.canceled_label = before;

    std::optional<ProcessorId> best;
    for (ProcessorId j = 0; j < n(); ++j) {
      if (!max_[j].legit()) continue;
      if (!best || Traits::cmp(max_[j].value, max_[*best].value) ==
                       LabelOrdering::Greater)
        best = j;
    }
    if (best) {
      max_[self_] = Pair{max_[*best].value, std::nullopt};
    } else {
      use_own_label(r);
    }
    if (!r.created && !(Traits::key(max_[self_].value) == before))
      r.adopted = true;
    return r;
  }

  void remove_doubles(Queue& q) {
    for (std::size_t a = 0; a < q.size(); ++a) {
      const Label ka = Traits::key(q[a].value);
      std::size_t keep = a;
      for (std::size_t b = a + 1; b < q.size(); ++b)
        if (Traits::key(q[b].value) == ka && q[keep].legit() && !q[b].legit())
          keep = b;
      if (keep != a) std::swap(q[a], q[keep]);
      for (std::size_t b = q.size(); b-- > a + 1;)
        if (Traits::key(q[b].value) == ka) q.erase(b);
    }
    bool seen_legit = false;
    for (std::size_t a = 0; a < q.size();) {
      if (q[a].legit()) {
        if (seen_legit) {
          q.erase(a);
          continue;
        }
        seen_legit = true;
      }
      ++a;
    }
  }

  void use_own_label(StepReport& r) {
    Queue& own_q = stored_[self_];
    for (std::size_t i = 0; i < own_q.size(); ++i) {
      if (own_q[i].legit()) {
        max_[self_] = own_q[i];
        own_q.move_to_front(i);
        return;
      }
    }
    std::vector<Label> inputs;
    inputs.reserve(2 * own_q.size());
    for (const Pair& p : own_q) {
      inputs.push_back(Traits::key(p.value));
      if (p.cancel) inputs.push_back(Traits::key(*p.cancel));
    }
    const Label fresh = next_label(params_.scheme, self_, inputs);
    max_[self_] = Pair{Traits::fresh(fresh, self_), std::nullopt};
    r.overflows += own_q.push_front(max_[self_]);
    r.created = true;
    r.fresh_labels.push_back(fresh);
  }

  ProtocolParams params_;
  ProcessorId self_;
  std::vector<Pair> max_;
  std::vector<Queue> stored_;
};

struct LabelTraits {
  using Value = Label;
  static const Label& key(const Label& v) { return v; }
  static LabelOrdering cmp(const Label& a, const Label& b) {
    return cmp_label(a, b);
  }
  static Label fresh(const Label& l, ProcessorId) { return l; }
  /// Adds the pair unless its label is already filed; a hit moves to front.
  static std::size_t store(BoundedQueue<CancelPair<Label>>& q,
                           const CancelPair<Label>& p) {
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (q[i].value == p.value) {
        q.move_to_front(i);
        return 0;
      }
    }
    return q.push_front(p) ? 1 : 0;
  }
};

using LabelPair = CancelPair<Label>;
using LabelingState = PairStore<LabelTraits>;

}  // namespace ssgc

#endif  // SSGC_LABELING_HPP_
