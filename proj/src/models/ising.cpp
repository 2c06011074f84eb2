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

#include "dls/models/ising.hpp"

#include "dls/errors.hpp"

namespace dls {

IsingModel::IsingModel(IsingParams params)
    : EnergyModel(params.rows * params.cols,
                  static_cast<int>(params.theta.cols())),
      params_(std::move(params)) {
  if (params_.rows < 1 || params_.cols < 1)
    throw ShapeError("IsingModel: lattice must be at least 1x1");
  if (params_.theta.rows() != static_cast<Eigen::Index>(n_))
    throw ShapeError("IsingModel: theta rows must equal rows*cols");
  if (!params_.theta.allFinite() || !std::isfinite(params_.lambda))
    throw DomainError("IsingModel: parameters must be finite");
}

double IsingModel::energy(const State& x) const {
  check_state(x);
  const int rows = params_.rows, cols = params_.cols;
  double field = 0.0;
  for (int n = 0; n < n_; ++n) field += params_.theta(n, x.values[n]);
  double agree = 0.0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int n = r * cols + c;
      if (c + 1 < cols && x.values[n] == x.values[n + 1]) agree += 1.0;
      if (r + 1 < rows && x.values[n] == x.values[n + cols]) agree += 1.0;
    }
  }
  return -field - params_.lambda * agree;
}

void IsingModel::neighbor_counts(const State& x, int site, Eigen::VectorXd& counts) const {
  const int rows = params_.rows, cols = params_.cols;
  const int r = site / cols, c = site % cols;
  if (r > 0) counts[x.values[site - cols]] += 1.0;
  if (r + 1 < rows) counts[x.values[site + cols]] += 1.0;
  if (c > 0) counts[x.values[site - 1]] += 1.0;
  if (c + 1 < cols) counts[x.values[site + 1]] += 1.0;
}

LocalRatios IsingModel::local_log_ratios(const State& x, int site) const {
  check_state(x);
  if (site < 0 || site >= n_) throw ShapeError("site index out of range");
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(c_);
  neighbor_counts(x, site, counts);
  // log pi(x_{site->j}) - log pi(x) = theta(site,j) - theta(site,x_site)
  //                                 + lambda * (counts[j] - counts[x_site])
  Eigen::VectorXd lr = params_.theta.row(site).transpose() + params_.lambda * counts;
  lr.array() -= lr[x.values[site]];
  return {site, std::move(lr)};
}

void IsingModel::local_log_ratio_sweep(const State& x, Eigen::MatrixXd& out) const {
  check_state(x);
  out.resize(n_, c_);
  Eigen::VectorXd counts(c_);
  for (int n = 0; n < n_; ++n) {
    counts.setZero();
    neighbor_counts(x, n, counts);
    out.row(n) = params_.theta.row(n) + params_.lambda * counts.transpose();
    out.row(n).array() -= out(n, x.values[n]);
  }
}

void IsingModel::grad_log_ratios(const State& x, Eigen::MatrixXd& out) const {
  // The energy is multilinear in one-hot encodings (the agreement term couples
  // distinct sites only), so the Taylor surrogate coincides with the exact sweep.
  local_log_ratio_sweep(x, out);
}

}  // namespace dls
