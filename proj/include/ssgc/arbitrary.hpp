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


#ifndef SSGC_ARBITRARY_HPP_
#define SSGC_ARBITRARY_HPP_

#include "ssgc/simulator.hpp"

namespace ssgc {

/// Overwrites every protocol field of every processor, and fills each
/// directed channel with up to `link_capacity` packets, from the simulator's
/// random stream. Labels come from a pool that mixes ordered chains, random
/// labels and (optionally) a same-creator cycle a < b < c < a.
void inject_arbitrary(Simulator& sim);

/// Three same-creator labels, each smaller than the next, the last smaller
/// than the first. Requires k >= 2.
std::vector<Label> label_cycle(const SchemeParams& params, ProcessorId creator);

}  // namespace ssgc

#endif  // SSGC_ARBITRARY_HPP_
