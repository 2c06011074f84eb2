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

#ifndef DLS_RATES_HPP
#define DLS_RATES_HPP

#include "dls/enumeration.hpp"
#include "dls/model.hpp"
#include "dls/weight.hpp"

namespace dls {

// One site's row of the continuous-time jump rates: rates[j] = g(ratio to j)
// for j != current, rates[current] = -sum of the others (the local diagonal).
struct RateRow {
  int site = 0;
  Eigen::VectorXd rates;
};

RateRow rate_row(const Eigen::VectorXd& log_ratios, int current, WeightKind kind);
RateRow rate_row(const EnergyModel& model, const State& x, int site, WeightKind kind);

// Dense generator over the whole state space; rows indexed by StateSpace
// encoding, off-diagonal support exactly on 1-Hamming neighbors.
struct FullRateMatrix {
  StateSpace space;
  Eigen::MatrixXd q;
};

FullRateMatrix full_rate_matrix(const EnergyModel& model, WeightKind kind,
                                int max_bits = 16);

}  // namespace dls

#endif  // DLS_RATES_HPP
