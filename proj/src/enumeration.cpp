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

#include "dls/enumeration.hpp"

#include <cmath>

#include "dls/errors.hpp"
#include "dls/rng.hpp"

namespace dls {

std::uint64_t StateSpace::size() const {
  std::uint64_t s = 1;
  for (int n = 0; n < dimension; ++n) {
    if (s > UINT64_MAX / static_cast<std::uint64_t>(n_categories))
      throw CapacityError("StateSpace: size overflows 64 bits");
    s *= static_cast<std::uint64_t>(n_categories);
  }
  return s;
}

std::uint64_t StateSpace::encode(const State& x) const {
  if (x.dimension() != dimension || x.n_categories != n_categories)
    throw ShapeError("StateSpace::encode: state shape mismatch");
  std::uint64_t idx = 0;
  for (int n = dimension - 1; n >= 0; --n)
    idx = idx * static_cast<std::uint64_t>(n_categories) +
          static_cast<std::uint64_t>(x.values[n]);
  return idx;
}

State StateSpace::decode(std::uint64_t index) const {
  State x(dimension, n_categories);
  decode_into(index, x);
  return x;
}

void StateSpace::decode_into(std::uint64_t index, State& x) const {
  const auto c = static_cast<std::uint64_t>(n_categories);
  for (int n = 0; n < dimension; ++n) {
    x.values[n] = static_cast<int>(index % c);
    index /= c;
  }
  if (index != 0) throw DomainError("StateSpace::decode: index out of range");
}

EnumeratedTarget enumerate_distribution(const EnergyModel& model, int max_bits) {
  if (!model.enumerable(max_bits))
    throw CapacityError("state space exceeds enumeration capacity");
  EnumeratedTarget t;
  t.space = {model.dimension(), model.n_categories()};
  const auto size = static_cast<Eigen::Index>(t.space.size());
  t.energies.resize(size);

  State x(model.dimension(), model.n_categories());
  for (Eigen::Index s = 0; s < size; ++s) {
    t.energies[s] = model.energy(x);
    // Increment the little-endian counter.
    for (int n = 0; n < model.dimension(); ++n) {
      if (++x.values[n] < model.n_categories()) break;
      x.values[n] = 0;
    }
  }

  t.log_z = log_sum_exp(-t.energies);
  t.log_probs = (-t.energies).array() - t.log_z;
  t.probs = t.log_probs.array().exp();
  return t;
}

}  // namespace dls
