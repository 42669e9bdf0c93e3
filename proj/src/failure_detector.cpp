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


#include "ssgc/failure_detector.hpp"

#include <algorithm>
#include <stdexcept>

namespace ssgc {

FailureDetector::FailureDetector(std::uint32_t n, ProcessorId self,
                                 std::uint32_t threshold)
    : heartbeat(n, 0), crd_of(n), self_(self), w_(threshold) {
  if (threshold == 0) throw std::invalid_argument("fd threshold must be >= 1");
  if (self >= n) throw std::invalid_argument("self id out of range");
}

void FailureDetector::on_token(ProcessorId from,
                               std::optional<ProcessorId> peer_crd) {
  if (from == self_ || from >= heartbeat.size())
    throw std::invalid_argument("fd: token from invalid peer");
  for (ProcessorId k = 0; k < heartbeat.size(); ++k) {
    if (k == self_) {
      heartbeat[k] = 0;
    } else if (k == from) {
      heartbeat[k] = 0;
    } else {
      heartbeat[k] = std::min(heartbeat[k] + 1, w_);
    }
  }
  crd_of[from] = peer_crd;
}

std::vector<FdEntry> FailureDetector::output(
    std::optional<ProcessorId> own_crd) const {
  std::vector<FdEntry> out;
  for (ProcessorId k = 0; k < heartbeat.size(); ++k) {
    if (k == self_) {
      out.push_back(FdEntry{k, own_crd});
    } else if (heartbeat[k] < w_) {
      out.push_back(FdEntry{k, crd_of[k]});
    }
  }
  return out;
}

std::set<ProcessorId> FailureDetector::trusted() const {
  std::set<ProcessorId> out;
  for (ProcessorId k = 0; k < heartbeat.size(); ++k)
    if (k == self_ || heartbeat[k] < w_) out.insert(k);
  return out;
}

}  // namespace ssgc
