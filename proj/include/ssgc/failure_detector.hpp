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


#ifndef SSGC_FAILURE_DETECTOR_HPP_
#define SSGC_FAILURE_DETECTOR_HPP_

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "ssgc/label.hpp"

namespace ssgc {

struct FdEntry {
  ProcessorId pid = 0;
  std::optional<ProcessorId> crd;
  friend bool operator==(const FdEntry&, const FdEntry&) = default;
};

/// Heartbeat counters advanced by token arrivals.
class FailureDetector {
 public:
  FailureDetector(std::uint32_t n, ProcessorId self, std::uint32_t threshold);

  std::uint32_t threshold() const { return w_; }
  ProcessorId self() const { return self_; }

  void on_token(ProcessorId from, std::optional<ProcessorId> peer_crd);

  /// Trusted peers with their reported coordinators, plus self with `own_crd`.
  std::vector<FdEntry> output(std::optional<ProcessorId> own_crd) const;
  std::set<ProcessorId> trusted() const;

  std::vector<std::uint32_t> heartbeat;
  std::vector<std::optional<ProcessorId>> crd_of;

 private:
  ProcessorId self_;
  std::uint32_t w_;
};

}  // namespace ssgc

#endif  // SSGC_FAILURE_DETECTOR_HPP_
