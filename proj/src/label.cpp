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


#include "ssgc/label.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <stdexcept>

#include "ssgc/hash.hpp"

namespace ssgc {

namespace {

std::uint64_t digest_of(ProcessorId creator, Sting sting,
                        const std::vector<Sting>& anti) {
  Fnv1a h;
  h.u64(creator).u64(sting).u64(anti.size());
  for (Sting a : anti) h.u64(a);
  return h.value();
}

// Adds the smallest members of D missing from `sorted` until it has k
// elements. `sorted` must be sorted, unique and within D.
void pad_smallest(const SchemeParams& params, std::vector<Sting>& sorted) {
  std::vector<Sting> out;
  out.reserve(params.k);
  std::size_t i = 0;
  Sting cand = 1;
  std::size_t missing = params.k - sorted.size();
  while (out.size() < params.k) {
    if (i < sorted.size() && sorted[i] == cand) {
      out.push_back(sorted[i++]);
    } else if (missing > 0) {
      out.push_back(cand);
      --missing;
    } else if (i < sorted.size()) {
      out.push_back(sorted[i++]);
      continue;
    }
    ++cand;
  }
  sorted.swap(out);
}

}  // namespace

const char* to_string(LabelOrdering o) {
  switch (o) {
    case LabelOrdering::Less: return "Less";
    case LabelOrdering::Greater: return "Greater";
    case LabelOrdering::Equal: return "Equal";
    case LabelOrdering::Incomparable: return "Incomparable";
  }
  return "?";
}

Label::Label(ProcessorId creator, Sting sting,
             std::shared_ptr<const std::vector<Sting>> antistings)
    : creator_(creator),
      sting_(sting),
      antistings_(std::move(antistings)),
      digest_(digest_of(creator_, sting_, *antistings_)) {}

Label Label::make(const SchemeParams& params, ProcessorId creator, Sting sting,
                  std::vector<Sting> antistings) {
  if (params.k == 0) throw std::invalid_argument("label: k must be >= 1");
  if (!params.in_domain(sting))
    throw std::invalid_argument("label: sting outside domain");
  std::sort(antistings.begin(), antistings.end());
  if (std::adjacent_find(antistings.begin(), antistings.end()) !=
      antistings.end())
    throw std::invalid_argument("label: duplicate antisting");
  if (antistings.size() != params.k)
    throw std::invalid_argument("label: antistings size must equal k");
  for (Sting a : antistings)
    if (!params.in_domain(a))
      throw std::invalid_argument("label: antisting outside domain");
  return Label(creator, sting,
               std::make_shared<const std::vector<Sting>>(std::move(antistings)));
}

Label Label::clamp(const SchemeParams& params, std::uint32_t n,
                   std::int64_t creator, std::int64_t sting,
                   std::span<const std::int64_t> antistings) {
  if (params.k == 0 || n == 0)
    throw std::invalid_argument("label: k and n must be >= 1");
  const auto top = static_cast<std::int64_t>(params.domain_size());
  auto into_domain = [top](std::int64_t v) -> Sting {
    return static_cast<Sting>(std::clamp<std::int64_t>(v, 1, top));
  };
  const auto nn = static_cast<std::int64_t>(n);
  auto c = static_cast<ProcessorId>(((creator % nn) + nn) % nn);
  std::vector<Sting> anti;
  anti.reserve(antistings.size());
  for (std::int64_t a : antistings) anti.push_back(into_domain(a));
  std::sort(anti.begin(), anti.end());
  anti.erase(std::unique(anti.begin(), anti.end()), anti.end());
  if (anti.size() > params.k) anti.resize(params.k);
  pad_smallest(params, anti);
  return Label(c, into_domain(sting),
               std::make_shared<const std::vector<Sting>>(std::move(anti)));
}

bool Label::has_antisting(Sting s) const {
  return std::binary_search(antistings_->begin(), antistings_->end(), s);
}

bool operator==(const Label& a, const Label& b) {
  if (a.digest_ != b.digest_ || a.creator_ != b.creator_ ||
      a.sting_ != b.sting_)
    return false;
  return a.antistings_ == b.antistings_ || *a.antistings_ == *b.antistings_;
}

LabelOrdering cmp_label(const Label& a, const Label& b) {
  if (a.creator() != b.creator())
    return a.creator() < b.creator() ? LabelOrdering::Less
                                     : LabelOrdering::Greater;
  if (a == b) return LabelOrdering::Equal;
  const bool a_in_b = b.has_antisting(a.sting());
  const bool b_in_a = a.has_antisting(b.sting());
  if (a_in_b && !b_in_a) return LabelOrdering::Less;
  if (b_in_a && !a_in_b) return LabelOrdering::Greater;
  return LabelOrdering::Incomparable;
}

bool cancels(const Label& canceller, const Label& target) {
  const LabelOrdering o = cmp_label(target, canceller);
  if (o == LabelOrdering::Incomparable) return true;
  return o == LabelOrdering::Less && target.creator() == canceller.creator();
}

Label next_label(const SchemeParams& params, ProcessorId creator,
                 std::span<const Label> inputs) {
  if (inputs.size() > params.k)
    throw std::invalid_argument("next_label: more than k input labels");
  std::vector<Sting> anti;
  anti.reserve(params.k);
  for (const Label& l : inputs) anti.push_back(l.sting());
  std::sort(anti.begin(), anti.end());
  anti.erase(std::unique(anti.begin(), anti.end()), anti.end());
  pad_smallest(params, anti);

  std::vector<Sting> used;
  for (const Label& l : inputs)
    used.insert(used.end(), l.antistings().begin(), l.antistings().end());
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());

  auto first_gap = [&](const std::vector<Sting>& excluded) -> Sting {
    Sting cand = 1;
    for (Sting e : excluded) {
      if (e > cand) break;
      if (e == cand) ++cand;
    }
    return cand;
  };
  std::vector<Sting> excluded;
  excluded.reserve(used.size() + anti.size());
  std::merge(used.begin(), used.end(), anti.begin(), anti.end(),
             std::back_inserter(excluded));
  excluded.erase(std::unique(excluded.begin(), excluded.end()),
                 excluded.end());
  Sting sting = first_gap(excluded);
  if (!params.in_domain(sting)) sting = first_gap(used);
  return Label(creator, sting,
               std::make_shared<const std::vector<Sting>>(std::move(anti)));
}

std::string render(const Label& label) {
  std::string out = std::to_string(label.creator()) + ":" +
                    std::to_string(label.sting()) + ":{";
  bool first = true;
  for (Sting a : label.antistings()) {
    if (!first) out += ',';
    first = false;
    out += std::to_string(a);
  }
  out += '}';
  return out;
}

std::string render_id(const Label& label) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(label.digest()));
  return std::to_string(label.creator()) + ":" +
         std::to_string(label.sting()) + ":#" + buf;
}

Label parse_label(const SchemeParams& params, std::string_view text) {
  auto fail = [&]() -> Label {
    throw std::invalid_argument("parse_label: malformed label '" +
                                std::string(text) + "'");
  };
  auto read_num = [&](std::string_view& s, std::uint32_t& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc()) return false;
    s.remove_prefix(static_cast<std::size_t>(p - s.data()));
    return true;
  };
  std::string_view s = text;
  std::uint32_t creator = 0, sting = 0;
  if (!read_num(s, creator) || s.empty() || s.front() != ':') return fail();
  s.remove_prefix(1);
  if (!read_num(s, sting) || s.size() < 3 || s.substr(0, 2) != ":{")
    return fail();
  s.remove_prefix(2);
  std::vector<Sting> anti;
  if (s.front() != '}') {
    for (;;) {
      std::uint32_t a = 0;
      if (!read_num(s, a) || s.empty()) return fail();
      anti.push_back(a);
      if (s.front() == '}') break;
      if (s.front() != ',') return fail();
      s.remove_prefix(1);
    }
  }
  if (s != "}") return fail();
  return Label::make(params, creator, sting, std::move(anti));
}

}  // namespace ssgc
