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

#ifndef DLS_MODELS_ISING_HPP
#define DLS_MODELS_ISING_HPP

#include "dls/model.hpp"

namespace dls {

struct IsingParams {
  int rows = 0;
  int cols = 0;
  double lambda = 0.0;          // nearest-neighbor agreement coupling
  Eigen::MatrixXd theta;        // (rows*cols) x C per-site potentials
};

// Ising/Potts lattice target on an open (non-periodic) rows x cols grid with
// 4-neighbor edges:
//   f(x) = -sum_n theta(n, x_n) - lambda * sum_{(i,j) in E} [x_i == x_j]
// C = 2 is the Ising case, C > 2 the Potts case. Site n = r*cols + c.
class IsingModel : public EnergyModel {
 public:
  explicit IsingModel(IsingParams params);

  const char* family() const override { return "ising"; }
  double energy(const State& x) const override;
  LocalRatios local_log_ratios(const State& x, int site) const override;
  void local_log_ratio_sweep(const State& x, Eigen::MatrixXd& out) const override;
  void grad_log_ratios(const State& x, Eigen::MatrixXd& out) const override;

  const IsingParams& params() const { return params_; }

 private:
  // Appends matches-per-category counts over the lattice neighbors of site.
  void neighbor_counts(const State& x, int site, Eigen::VectorXd& counts) const;

  IsingParams params_;
};

}  // namespace dls

#endif  // DLS_MODELS_ISING_HPP
