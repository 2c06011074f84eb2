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

#ifndef DLS_TRANSITION_HPP
#define DLS_TRANSITION_HPP

#include "dls/rates.hpp"
#include "dls/weight.hpp"

namespace dls {

// Interpolated per-site transition row for simulation time h:
//   P(j) = nu_j * (1 - exp(-h * rates_j / nu_j)),  j != current,
//   P(current) = 1 - sum of the others,
// with nu = softmax(log_ratios). Interpolates between the identity (h -> 0)
// and the local stationary distribution nu (h -> inf), and is the exact CTMC
// transition kernel when C = 2.
Eigen::VectorXd interpolated_row(const RateRow& row, const Eigen::VectorXd& log_ratios,
                                 int current, double h);

// Forward-Euler row: P(j) = h * rates_j, P(current) = 1 - h * total. When the
// off-diagonal mass exceeds 1 the row is clamped to the boundary (diagonal 0,
// off-diagonals renormalized); *clamped reports that event.
Eigen::VectorXd euler_row(const RateRow& row, int current, double h,
                          bool* clamped = nullptr);

// Langevin-style softmax row: mass 1 at the current value and
// exp(log_g(ratio) - 1/(2*alpha)) elsewhere, normalized. With the sqrt weight
// this matches the Euler row's off-diagonal proportions at h = exp(-1/(2*alpha)).
Eigen::VectorXd dmala_row(const Eigen::VectorXd& log_ratios, int current, double alpha,
                          WeightKind kind = WeightKind::kSqrt);

// exp(h*Q) for a generator Q (rows sum to 0, off-diagonals >= 0) by scaling
// and squaring with a truncated Taylor series. Rows of the result sum to 1
// within 1e-10; entries in [-1e-12, 0) are clamped to 0.
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& q, double h);

}  // namespace dls

#endif  // DLS_TRANSITION_HPP
