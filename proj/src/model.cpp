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

#include "dls/model.hpp"

#include <cmath>

#include "dls/errors.hpp"

namespace dls {

EnergyModel::EnergyModel(int dimension, int n_categories)
    : n_(dimension), c_(n_categories) {
  if (dimension < 1) throw ShapeError("EnergyModel: dimension must be positive");
  if (n_categories < 2) throw ShapeError("EnergyModel: need at least 2 categories");
}

void EnergyModel::check_state(const State& x) const {
  if (x.dimension() != n_ || x.n_categories != c_)
    throw ShapeError("state shape does not match model");
  x.check();
}

void EnergyModel::local_log_ratio_sweep(const State& x, Eigen::MatrixXd& out) const {
  out.resize(n_, c_);
  for (int n = 0; n < n_; ++n)
    out.row(n) = local_log_ratios(x, n).log_ratios.transpose();
}

bool EnergyModel::enumerable(int max_bits) const {
  double bits = n_ * std::log2(static_cast<double>(c_));
  return bits <= static_cast<double>(max_bits) + 1e-12;
}

}  // namespace dls
