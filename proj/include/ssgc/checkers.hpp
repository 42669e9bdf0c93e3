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


#ifndef SSGC_CHECKERS_HPP_
#define SSGC_CHECKERS_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ssgc/trace.hpp"

namespace ssgc {

struct Verdict {
  std::string property;
  bool passed = false;
  // Convergence step on success, first violating step on failure.
  std::optional<std::uint64_t> step;
  std::string diagnostics;
};

class UnknownProperty : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Names accepted by check(), in a stable order.
const std::vector<std::string>& property_names();

/// Properties that say something about a trace of the given workload.
std::vector<std::string> properties_for(const Trace& trace);

Verdict check(const Trace& trace, std::string_view property);

}  // namespace ssgc

#endif  // SSGC_CHECKERS_HPP_
