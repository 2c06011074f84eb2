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

#include "dls/weight.hpp"

#include <cmath>

#include "dls/errors.hpp"

namespace dls {

double softplus(double z) {
  if (z > 0.0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

double log_g(WeightKind kind, double log_t) {
  if (std::isnan(log_t)) throw DomainError("log_g: NaN log-ratio");
  switch (kind) {
    case WeightKind::kSqrt:
      return 0.5 * log_t;
    case WeightKind::kBarker:
      // log(t / (1 + t)) = log sigmoid(log t) = -softplus(-log t)
      return -softplus(-log_t);
  }
  throw DomainError("log_g: unknown weight kind");
}

const char* to_string(WeightKind kind) {
  return kind == WeightKind::kSqrt ? "sqrt" : "barker";
}

WeightKind weight_from_string(const std::string& name) {
  if (name == "sqrt") return WeightKind::kSqrt;
  if (name == "barker") return WeightKind::kBarker;
  throw ParseError("unknown weight function: " + name);
}

}  // namespace dls
