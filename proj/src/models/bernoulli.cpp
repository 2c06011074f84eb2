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

#include "dls/models/bernoulli.hpp"

#include "dls/errors.hpp"

namespace dls {

BernoulliModel::BernoulliModel(BernoulliParams params)
    : EnergyModel(static_cast<int>(params.theta.rows()),
                  static_cast<int>(params.theta.cols())),
      params_(std::move(params)) {
  if (!params_.theta.allFinite())
    throw DomainError("BernoulliModel: theta must be finite");
}

double BernoulliModel::energy(const State& x) const {
  check_state(x);
  double f = 0.0;
  for (int n = 0; n < n_; ++n) f += params_.theta(n, x.values[n]);
  return f;
}

LocalRatios BernoulliModel::local_log_ratios(const State& x, int site) const {
  check_state(x);
  if (site < 0 || site >= n_) throw ShapeError("site index out of range");
  const double cur = params_.theta(site, x.values[site]);
  Eigen::VectorXd lr = -params_.theta.row(site).transpose();
  lr.array() += cur;
  return {site, std::move(lr)};
}

void BernoulliModel::local_log_ratio_sweep(const State& x, Eigen::MatrixXd& out) const {
  check_state(x);
  out = -params_.theta;
  for (int n = 0; n < n_; ++n)
    out.row(n).array() += params_.theta(n, x.values[n]);
}

void BernoulliModel::grad_log_ratios(const State& x, Eigen::MatrixXd& out) const {
  // Energy is linear in the one-hot encoding, so the Taylor surrogate is exact.
  local_log_ratio_sweep(x, out);
}

}  // namespace dls
