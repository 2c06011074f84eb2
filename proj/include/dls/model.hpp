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

#ifndef DLS_MODEL_HPP
#define DLS_MODEL_HPP

#include <string>

#include <Eigen/Core>

#include "dls/state.hpp"

namespace dls {

// Local target log-ratios at one site: log_ratios[j] = log pi(x with site set
// to j) - log pi(x). The entry at the current value is 0 by construction.
struct LocalRatios {
  int site;
  Eigen::VectorXd log_ratios;
};

// An unnormalized target pi(x) = exp(-f(x)) over C^N states. Implementations
// are immutable after construction and safe to share across threads.
class EnergyModel {
 public:
  virtual ~EnergyModel() = default;

  int dimension() const { return n_; }
  int n_categories() const { return c_; }
  virtual const char* family() const = 0;

  // Energy f(x); the target is pi(x) ∝ exp(-f(x)).
  virtual double energy(const State& x) const = 0;

  // Exact log-ratios for single-site changes at `site`.
  virtual LocalRatios local_log_ratios(const State& x, int site) const = 0;

  // Exact log-ratios for every site at once; out is N x C. Row n equals
  // local_log_ratios(x, n).
  virtual void local_log_ratio_sweep(const State& x, Eigen::MatrixXd& out) const;

  // Taylor surrogate of the sweep: out(n, j) = <grad log pi~(x), e_{n,j} - e_{n,x_n}>
  // where pi~ relaxes one-hot site encodings to the simplex. Exact for models
  // whose energy is multilinear in the encoding (Bernoulli, Ising, Potts).
  virtual void grad_log_ratios(const State& x, Eigen::MatrixXd& out) const = 0;

  // True when C^N fits within 2^max_bits states.
  bool enumerable(int max_bits = 16) const;

 protected:
  EnergyModel(int dimension, int n_categories);
  void check_state(const State& x) const;

  int n_;
  int c_;
};

}  // namespace dls

#endif  // DLS_MODEL_HPP
