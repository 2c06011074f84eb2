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

#ifndef DLS_TUNER_HPP
#define DLS_TUNER_HPP

#include "dls/samplers.hpp"

namespace dls {

struct TuneResult {
  SamplerConfig config;              // input config with the tuned value filled in
  double trailing_acceptance = 0.0;  // realized acceptance over the last window
  bool converged = false;            // trailing acceptance within 0.05 of target
  bool saturated = false;            // parameter pinned at a bound
  long long steps = 0;
};

// Stochastic-approximation tuning of the kernel's scalar hyperparameter
// (h for dlmc/dlmcf, alpha for dmala, flip count for rwm/pas) toward a target
// acceptance rate: log theta_{k+1} = log theta_k + gamma_k (acc_k - target)
// with gamma_k = c / k^0.6. Integer flip counts ride a continuous surrogate
// and are rounded at each step. Rejection-free kernels have nothing to tune
// (DomainError). A kernel that cannot reach the target (e.g. acceptance
// stuck at 1) drifts to a parameter bound and is reported as saturated.
TuneResult tune(const SamplerConfig& config, const EnergyModel& model,
                double target_rate, long long adaptation_steps, Rng rng);

}  // namespace dls

#endif  // DLS_TUNER_HPP
