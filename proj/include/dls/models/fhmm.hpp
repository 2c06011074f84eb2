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

#ifndef DLS_MODELS_FHMM_HPP
#define DLS_MODELS_FHMM_HPP

#include "dls/model.hpp"

namespace dls {

struct FhmmParams {
  int length = 0;                 // time steps L
  int factors = 0;                // independent binary chains K
  Eigen::VectorXd weights;        // emission weights, one per chain
  double bias = 0.0;              // emission bias
  double sigma = 1.0;             // emission noise std dev
  double p1_init = 0.1;           // P(x_{1,k} = 1)
  double p_stay = 0.8;            // P(x_{l,k} = x_{l-1,k})
  Eigen::VectorXd observations;   // y, one per time step
};

// Factorial hidden Markov posterior over binary chains x in {0,1}^{L x K}:
//   f(x) = -log p(x) - log p(y | x)
// with Markov-chain prior p(x) and Gaussian emissions
// y_l ~ N(<W, x_l> + b, sigma^2). The Gaussian normalization constant is kept
// so exp(-f) is the exact joint density. Site n = l*K + k.
class FhmmModel : public EnergyModel {
 public:
  explicit FhmmModel(FhmmParams params);

  const char* family() const override { return "fhmm"; }
  double energy(const State& x) const override;
  LocalRatios local_log_ratios(const State& x, int site) const override;
  void local_log_ratio_sweep(const State& x, Eigen::MatrixXd& out) const override;
  void grad_log_ratios(const State& x, Eigen::MatrixXd& out) const override;

  const FhmmParams& params() const { return params_; }

 private:
  // Emission means <W, x_l> + b for every time step.
  Eigen::VectorXd emission_means(const State& x) const;
  // log pi(x with site flipped) - log pi(x).
  double flip_delta(const State& x, const Eigen::VectorXd& means, int site) const;

  FhmmParams params_;
  double log_init_[2];
  double log_trans_[2][2];  // [from][to]
  double log_norm_;         // per-emission log(sigma * sqrt(2*pi))
};

}  // namespace dls

#endif  // DLS_MODELS_FHMM_HPP
