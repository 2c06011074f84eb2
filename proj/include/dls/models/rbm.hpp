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

#ifndef DLS_MODELS_RBM_HPP
#define DLS_MODELS_RBM_HPP

#include "dls/model.hpp"

namespace dls {

struct RbmParams {
  Eigen::MatrixXd theta_v;      // N x C visible potentials
  Eigen::VectorXd hidden_bias;  // M
  Eigen::MatrixXd weights;      // M x (N*C); column n*C + c couples (site n, cat c)
};

// Restricted Boltzmann machine with categorical visibles and binary hiddens
// summed out:
//   f(v) = -sum_n theta_v(n, v_n) - sum_m softplus(beta_m + a_m(v)),
//   a_m(v) = sum_n W(m, n*C + v_n).
// exp(-f(v)) equals the joint with every hidden configuration marginalized.
class RbmModel : public EnergyModel {
 public:
  explicit RbmModel(RbmParams params);

  const char* family() const override { return "rbm"; }
  double energy(const State& x) const override;
  LocalRatios local_log_ratios(const State& x, int site) const override;
  void local_log_ratio_sweep(const State& x, Eigen::MatrixXd& out) const override;
  void grad_log_ratios(const State& x, Eigen::MatrixXd& out) const override;

  const RbmParams& params() const { return params_; }
  int n_hidden() const { return static_cast<int>(params_.hidden_bias.size()); }

 private:
  // Hidden pre-activations beta + a(v).
  Eigen::VectorXd activation(const State& x) const;

  RbmParams params_;
};

}  // namespace dls

#endif  // DLS_MODELS_RBM_HPP
