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

#include "dls/models/rbm.hpp"

#include <cmath>

#include "dls/errors.hpp"
#include "dls/weight.hpp"

namespace dls {

RbmModel::RbmModel(RbmParams params)
    : EnergyModel(static_cast<int>(params.theta_v.rows()),
                  static_cast<int>(params.theta_v.cols())),
      params_(std::move(params)) {
  const Eigen::Index m = params_.hidden_bias.size();
  if (m < 1) throw ShapeError("RbmModel: need at least one hidden unit");
  if (params_.weights.rows() != m ||
      params_.weights.cols() != static_cast<Eigen::Index>(n_) * c_)
    throw ShapeError("RbmModel: weights must be M x (N*C)");
  if (!params_.theta_v.allFinite() || !params_.hidden_bias.allFinite() ||
      !params_.weights.allFinite())
    throw DomainError("RbmModel: parameters must be finite");
}

Eigen::VectorXd RbmModel::activation(const State& x) const {
  Eigen::VectorXd a = params_.hidden_bias;
  for (int n = 0; n < n_; ++n) a += params_.weights.col(n * c_ + x.values[n]);
  return a;
}

double RbmModel::energy(const State& x) const {
  check_state(x);
  double f = 0.0;
  for (int n = 0; n < n_; ++n) f -= params_.theta_v(n, x.values[n]);
  const Eigen::VectorXd a = activation(x);
  for (Eigen::Index m = 0; m < a.size(); ++m) f -= softplus(a[m]);
  return f;
}

LocalRatios RbmModel::local_log_ratios(const State& x, int site) const {
  check_state(x);
  if (site < 0 || site >= n_) throw ShapeError("site index out of range");
  const Eigen::VectorXd a = activation(x);
  const int cur = x.values[site];
  Eigen::VectorXd lr(c_);
  for (int j = 0; j < c_; ++j) {
    if (j == cur) {
      lr[j] = 0.0;
      continue;
    }
    double d = params_.theta_v(site, j) - params_.theta_v(site, cur);
    const auto w_new = params_.weights.col(site * c_ + j);
    const auto w_old = params_.weights.col(site * c_ + cur);
    for (Eigen::Index m = 0; m < a.size(); ++m)
      d += softplus(a[m] + w_new[m] - w_old[m]) - softplus(a[m]);
    lr[j] = d;
  }
  return {site, std::move(lr)};
}

void RbmModel::local_log_ratio_sweep(const State& x, Eigen::MatrixXd& out) const {
  check_state(x);
  out.resize(n_, c_);
  const Eigen::VectorXd a = activation(x);
  Eigen::VectorXd sp_a(a.size());
  for (Eigen::Index m = 0; m < a.size(); ++m) sp_a[m] = softplus(a[m]);
  const double sp_total = sp_a.sum();
  for (int n = 0; n < n_; ++n) {
    const int cur = x.values[n];
    const auto w_old = params_.weights.col(n * c_ + cur);
    for (int j = 0; j < c_; ++j) {
      if (j == cur) {
        out(n, j) = 0.0;
        continue;
      }
      double d = params_.theta_v(n, j) - params_.theta_v(n, cur) - sp_total;
      const auto w_new = params_.weights.col(n * c_ + j);
      for (Eigen::Index m = 0; m < a.size(); ++m)
        d += softplus(a[m] + w_new[m] - w_old[m]);
      out(n, j) = d;
    }
  }
}

void RbmModel::grad_log_ratios(const State& x, Eigen::MatrixXd& out) const {
  check_state(x);
  out.resize(n_, c_);
  const Eigen::VectorXd a = activation(x);
  // d(-f)/d v~(n,c) = theta_v(n,c) + sum_m sigmoid(a_m) W(m, n*C+c)
  Eigen::VectorXd s(a.size());
  for (Eigen::Index m = 0; m < a.size(); ++m)
    s[m] = 1.0 / (1.0 + std::exp(-a[m]));
  const Eigen::RowVectorXd g = s.transpose() * params_.weights;
  for (int n = 0; n < n_; ++n) {
    const int cur = x.values[n];
    const double base = params_.theta_v(n, cur) + g[n * c_ + cur];
    for (int j = 0; j < c_; ++j)
      out(n, j) = params_.theta_v(n, j) + g[n * c_ + j] - base;
  }
}

}  // namespace dls
