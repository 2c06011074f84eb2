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

#ifndef DLS_STATE_HPP
#define DLS_STATE_HPP

#include <cstdint>
#include <vector>

#include "dls/errors.hpp"

namespace dls {

// A configuration of N sites, each holding a category in {0, ..., C-1}.
struct State {
  std::vector<int> values;
  int n_categories = 2;

  State() = default;
  State(int dimension, int n_categories_, int fill = 0)
      : values(static_cast<std::size_t>(dimension), fill), n_categories(n_categories_) {}

  int dimension() const { return static_cast<int>(values.size()); }

  void check() const {
    if (n_categories < 2) throw DomainError("State: need at least 2 categories");
    for (int v : values)
      if (v < 0 || v >= n_categories)
        throw DomainError("State: site value out of range");
  }

  bool operator==(const State& other) const = default;
};

}  // namespace dls

#endif  // DLS_STATE_HPP
