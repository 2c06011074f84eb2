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

#ifndef DLS_WEIGHT_HPP
#define DLS_WEIGHT_HPP

#include <string>

namespace dls {

// Locally balanced weight functions g, applied to target ratios t = pi(y)/pi(x).
// Both satisfy g(t) = t * g(1/t):
//   sqrt:   g(t) = sqrt(t)
//   barker: g(t) = t / (1 + t)
enum class WeightKind { kSqrt, kBarker };

// log g(t) evaluated from log t. Numerically stable over the whole real line;
// the balance identity log g(t) = log t + log g(1/t) holds to the last bit.
double log_g(WeightKind kind, double log_t);

const char* to_string(WeightKind kind);
WeightKind weight_from_string(const std::string& name);

// log(1 + e^z) without overflow.
double softplus(double z);

}  // namespace dls

#endif  // DLS_WEIGHT_HPP
