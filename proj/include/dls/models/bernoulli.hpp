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

#ifndef DLS_MODELS_BERNOULLI_HPP
#define DLS_MODELS_BERNOULLI_HPP

#include "dls/model.hpp"

namespace dls {

struct BernoulliParams {
  // theta(n, c): per-site, per-category potential. Binary models store
  // column 0 = 0, column 1 = the usual scalar field.
  Eigen::MatrixXd theta;
};

// Fully factorized target: f(x) = sum_n theta(n, x_n), pi(x) ∝ exp(-f(x)).
// Site marginals are independent softmax(-theta row) distributions.
class BernoulliModel : public EnergyModel {
 public:
  explicit BernoulliModel(BernoulliParams params);

  const char* family() const override { return "bernoulli"; }
  double energy(const State& x) const override;
  LocalRatios local_log_ratios(const State& x, int site) const override;
  void local_log_ratio_sweep(const State& x, Eigen::MatrixXd& out) const override;
  void grad_log_ratios(const State& x, Eigen::MatrixXd& out) const override;

  const BernoulliParams& params() const { return params_; }

 private:
  BernoulliParams params_;
};

}  // namespace dls

#endif  // DLS_MODELS_BERNOULLI_HPP
