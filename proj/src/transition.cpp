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

#include "dls/transition.hpp"

#include <cmath>

#include "dls/errors.hpp"
#include "dls/rng.hpp"

namespace dls {

namespace {

constexpr double kNuFloor = 1e-300;

void check_h(double h, const char* who) {
  if (!(h >= 0.0)) throw DomainError(std::string(who) + ": h must be non-negative");
}

}  // namespace

Eigen::VectorXd interpolated_row(const RateRow& row, const Eigen::VectorXd& log_ratios,
                                 int current, double h) {
  check_h(h, "interpolated_row");
  const Eigen::Index c = log_ratios.size();
  if (row.rates.size() != c) throw ShapeError("interpolated_row: size mismatch");
  if (current < 0 || current >= c)
    throw ShapeError("interpolated_row: current out of range");

  // nu = softmax(log_ratios): the single-site stationary distribution.
  const double lse = log_sum_exp(log_ratios);
  Eigen::VectorXd p = Eigen::VectorXd::Zero(c);
  double off = 0.0;
  for (Eigen::Index j = 0; j < c; ++j) {
    if (j == current) continue;
    const double nu = std::exp(log_ratios[j] - lse);
    if (nu < kNuFloor) continue;  // vanishing local mass: no flow to j
    // -expm1 keeps the h -> 0 limit accurate: P(j)/h -> rates_j.
    p[j] = nu * -std::expm1(-h * row.rates[j] / nu);
    off += p[j];
  }
  // Complement guarantees the row sums to exactly 1; off <= 1 - nu_current.
  p[current] = std::max(0.0, 1.0 - off);
  return p;
}

Eigen::VectorXd euler_row(const RateRow& row, int current, double h, bool* clamped) {
  check_h(h, "euler_row");
  const Eigen::Index c = row.rates.size();
  if (current < 0 || current >= c) throw ShapeError("euler_row: current out of range");
  Eigen::VectorXd p(c);
  double off = 0.0;
  for (Eigen::Index j = 0; j < c; ++j) {
    if (j == current) continue;
    p[j] = h * row.rates[j];
    off += p[j];
  }
  if (clamped != nullptr) *clamped = off > 1.0;
  if (off > 1.0) {
    // Boundary of valid step sizes: drop the diagonal, renormalize the rest.
    for (Eigen::Index j = 0; j < c; ++j)
      if (j != current) p[j] /= off;
    p[current] = 0.0;
  } else {
    p[current] = 1.0 - off;
  }
  return p;
}

Eigen::VectorXd dmala_row(const Eigen::VectorXd& log_ratios, int current, double alpha,
                          WeightKind kind) {
  if (!(alpha > 0.0)) throw DomainError("dmala_row: alpha must be positive");
  const Eigen::Index c = log_ratios.size();
  if (current < 0 || current >= c) throw ShapeError("dmala_row: current out of range");
  const double penalty = 1.0 / (2.0 * alpha);
  Eigen::VectorXd p(c);
  double total = 0.0;
  for (Eigen::Index j = 0; j < c; ++j) {
    p[j] = j == current ? 1.0 : std::exp(log_g(kind, log_ratios[j]) - penalty);
    total += p[j];
  }
  p /= total;
  return p;
}

Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& q, double h) {
  check_h(h, "matrix_exponential");
  const Eigen::Index m = q.rows();
  if (q.cols() != m) throw ShapeError("matrix_exponential: matrix must be square");
  for (Eigen::Index i = 0; i < m; ++i) {
    double row_sum = 0.0, scale = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (j != i && q(i, j) < -1e-12)
        throw DomainError("matrix_exponential: negative off-diagonal rate");
      row_sum += q(i, j);
      scale += std::abs(q(i, j));
    }
    if (std::abs(row_sum) > 1e-8 * std::max(1.0, scale))
      throw DomainError("matrix_exponential: rows must sum to 0");
  }

  Eigen::MatrixXd a = h * q;
  // Scale so the infinity norm is at most 1/2, run a Taylor series long
  // enough for ~1e-20 truncation error, then square back.
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    a /= std::pow(2.0, squarings);
  }
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(m, m);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(m, m);
  for (int k = 1; k <= 18; ++k) {
    term = (term * a) / static_cast<double>(k);
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;

  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      if (result(i, j) < 0.0) {
        if (result(i, j) < -1e-12)
          throw DomainError("matrix_exponential: entry below -1e-12");
        result(i, j) = 0.0;
      }
    }
    const double row_sum = result.row(i).sum();
    if (std::abs(row_sum - 1.0) > 1e-10)
      throw DomainError("matrix_exponential: row sum drifted from 1");
  }
  return result;
}

}  // namespace dls
