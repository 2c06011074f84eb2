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

#ifndef DLS_DWGF_HPP
#define DLS_DWGF_HPP

#include <vector>

#include <Eigen/Core>

#include "dls/weight.hpp"

namespace dls {

struct FlowRecord {
  double t = 0.0;
  Eigen::VectorXd rho;
  double kl = 0.0;  // KL(rho || pi)
};

// KL divergence between distributions on a finite space; 0 log 0 = 0.
double kl_divergence(const Eigen::VectorXd& rho, const Eigen::VectorXd& pi);

// Conservative default step for integrate_dwgf: min(0.01, 0.1 / max |q_ii|).
double default_dwgf_dt(const Eigen::MatrixXd& q);

// Integrates the probability-flow ODE d rho / dt = rho^T Q with classical RK4
// and records every step. The true flow is the Wasserstein gradient flow of
// KL(rho || pi), so the recorded KL values must be non-increasing. Throws
// StepSizeError if the step size drives rho meaningfully negative or leaks
// total mass (tiny negatives are clamped and the vector renormalized).
std::vector<FlowRecord> integrate_dwgf(const Eigen::MatrixXd& q,
                                       const Eigen::VectorXd& pi,
                                       const Eigen::VectorXd& rho0, double t_end,
                                       double dt);

// d rho / dt straight from the gradient-flow form: pairwise conductances
// c_ij(rho) (a logarithmic mean of the directed masses m_ij = g(pi_j/pi_i) rho_i)
// times the potential differences (f_i + log rho_i) - (f_j + log rho_j).
// Algebraically identical to rho^T Q; computed without forming Q.
Eigen::VectorXd conductance_flow(const Eigen::VectorXd& rho, const Eigen::VectorXd& pi,
                                 const Eigen::VectorXd& energies, WeightKind kind);

// Same derivative from the master-equation form sum_i rho_i Q_ij over the
// complete graph; the independent counterpart used to cross-check
// conductance_flow.
Eigen::VectorXd master_equation_flow(const Eigen::VectorXd& rho,
                                     const Eigen::VectorXd& pi, WeightKind kind);

}  // namespace dls

#endif  // DLS_DWGF_HPP
