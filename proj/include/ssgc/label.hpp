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

#ifndef SSGC_LABEL_HPP_
#define SSGC_LABEL_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ssgc {

using ProcessorId = std::uint32_t;
using Sting = std::uint32_t;

/// Sizing of the bounded labeling scheme. Stings live in D = [1, k^2 + 1].
struct SchemeParams {
  std::uint32_t k = 1;

  std::uint64_t domain_size() const {
    return static_cast<std::uint64_t>(k) * k + 1;
  }
  bool in_domain(std::uint64_t x) const { return x >= 1 && x <= domain_size(); }
};

enum class LabelOrdering { Less, Greater, Equal, Incomparable };

const char* to_string(LabelOrdering o);

/**
 * Epoch label <creator, sting, antistings>.
 *
 * Labels are immutable values. The antistings set is stored sorted and shared
 * between copies, so copying a label is cheap even for large k.
 */
class Label {
 public:
  /// Validating constructor. Throws std::invalid_argument when the sting is
  /// outside D or the antistings are not exactly k distinct members of D.
  static Label make(const SchemeParams& params, ProcessorId creator,
                    Sting sting, std::vector<Sting> antistings);

  /// Normalizing constructor for untrusted input (arbitrary initial states,
  /// decoded records). Values are clamped into D, duplicates are replaced by
  /// the smallest unused members of D and the set is truncated or padded to
  /// size k. The creator is reduced modulo n.
  static Label clamp(const SchemeParams& params, std::uint32_t n,
                     std::int64_t creator, std::int64_t sting,
                     std::span<const std::int64_t> antistings);

  ProcessorId creator() const { return creator_; }
  Sting sting() const { return sting_; }
  std::span<const Sting> antistings() const { return *antistings_; }
  bool has_antisting(Sting s) const;

  /// 64-bit FNV-1a digest over all three fields.
  std::uint64_t digest() const { return digest_; }

  friend bool operator==(const Label& a, const Label& b);
  friend Label next_label(const SchemeParams&, ProcessorId,
                          std::span<const Label>);

 private:
  Label(ProcessorId creator, Sting sting,
        std::shared_ptr<const std::vector<Sting>> antistings);

  ProcessorId creator_ = 0;
  Sting sting_ = 0;
  std::shared_ptr<const std::vector<Sting>> antistings_;
  std::uint64_t digest_ = 0;
};

LabelOrdering cmp_label(const Label& a, const Label& b);

/// True iff `canceller` makes `target` obsolete: the two are incomparable, or
/// they share a creator and `target` is the smaller one.
bool cancels(const Label& canceller, const Label& target);

/**
 * Returns a label created by `creator` that is greater than every input label
 * of the same creator.
 *
 * Antistings are the input stings padded with the smallest unused members of
 * D. The sting is the smallest member of D outside the new antistings and all
 * input antistings; if that set is empty (possible only for adversarial
 * inputs) the sting is drawn from D minus the input antistings alone, which
 * keeps the ordering guarantee.
 *
 * Throws std::invalid_argument if more than k labels are given.
 */
Label next_label(const SchemeParams& params, ProcessorId creator,
                 std::span<const Label> inputs);

/// `creator:sting:{a1,a2,...}` with antistings ascending.
std::string render(const Label& label);

/// Short identity used in high-volume trace records: `creator:sting:#hex`.
std::string render_id(const Label& label);

/// Parses the canonical rendering. The result is validated against `params`.
Label parse_label(const SchemeParams& params, std::string_view text);

}  // namespace ssgc

#endif  // SSGC_LABEL_HPP_
