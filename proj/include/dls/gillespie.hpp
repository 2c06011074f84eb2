// Copyright 2026 The dlsamp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DLS_GILLESPIE_HPP
#define DLS_GILLESPIE_HPP

#include <vector>

#include "dls/model.hpp"
#include "dls/rng.hpp"
#include "dls/weight.hpp"

namespace dls {

struct JumpEvent {
  double time = 0.0;
  State state;
};

// Exact simulation of the continuous-time chain with per-move rates
// g(pi(y)/pi(x)) over 1-Hamming neighbors y: exponential holding times at the
// total exit rate, categorical first-jump selection proportional to the rates.
// The returned path starts with (0, x0) and contains every jump up to t_end.
// max_jumps > 0 stops the simulation early after that many jumps (used by
// first-jump-law checks).
std::vector<JumpEvent> gillespie_path(const EnergyModel& model, const State& x0,
                                      double t_end, WeightKind kind, Rng& rng,
                                      int max_jumps = 0);

}  // namespace dls

#endif  // DLS_GILLESPIE_HPP
