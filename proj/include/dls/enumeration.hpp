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

#ifndef DLS_ENUMERATION_HPP
#define DLS_ENUMERATION_HPP

#include <cstdint>

#include <Eigen/Core>

#include "dls/model.hpp"
#include "dls/state.hpp"

namespace dls {

// Little-endian mixed-radix indexing of {0..C-1}^N: index = sum_n x_n * C^n.
struct StateSpace {
  int dimension = 0;
  int n_categories = 2;

  std::uint64_t size() const;
  std::uint64_t encode(const State& x) const;
  State decode(std::uint64_t index) const;
  // In-place variant of decode for hot loops.
  void decode_into(std::uint64_t index, State& x) const;
};

// Exactly enumerated target: energies, probabilities and normalizer of every
// state. Only available while C^N <= 2^max_bits.
struct EnumeratedTarget {
  StateSpace space;
  Eigen::VectorXd energies;   // f(s) per state index
  Eigen::VectorXd log_probs;  // log pi(s), normalized
  Eigen::VectorXd probs;      // pi(s)
  double log_z = 0.0;         // log sum exp(-f)
};

EnumeratedTarget enumerate_distribution(const EnergyModel& model, int max_bits = 16);

}  // namespace dls

#endif  // DLS_ENUMERATION_HPP
