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


#include "ssgc/labeling.hpp"

#include <algorithm>

namespace ssgc {

ProtocolParams ProtocolParams::safe(std::uint32_t n, std::uint64_t m) {
  if (n == 0) throw std::invalid_argument("n must be >= 1");
  const std::uint64_t nn = n;
  const std::uint64_t declared = nn * (nn * nn + m);
  const std::uint64_t proven = 2 * (m * nn + 2 * nn * nn - 2 * nn) + 1;
  ProtocolParams p;
  p.n = n;
  p.m = m;
  p.own_queue_cap = static_cast<std::size_t>(std::max(declared, proven));
  p.other_queue_cap = static_cast<std::size_t>(nn + m);
  p.scheme.k = static_cast<std::uint32_t>(2 * p.own_queue_cap);
  return p;
}

}  // namespace ssgc
