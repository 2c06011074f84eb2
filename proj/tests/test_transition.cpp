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

#include <cmath>
#include <limits>

#include <doctest.h>

#include "dls/errors.hpp"
#include "dls/rng.hpp"
#include "dls/transition.hpp"

using namespace dls;

TEST_CASE("matrix exponential of a two-state generator") {
  Eigen::MatrixXd q(2, 2);
  q << -1.0, 1.0, 2.0, -2.0;
  Eigen::MatrixXd p = matrix_exponential(q, 1.0);
  // Closed form: p01 = (1/3)(1 - e^-3).
  const double p01 = (1.0 - std::exp(-3.0)) / 3.0;
  CHECK(p(0, 1) == doctest::Approx(p01).epsilon(1e-13));
  CHECK(p(0, 0) == doctest::Approx(1.0 - p01).epsilon(1e-13));
  CHECK(p(1, 0) == doctest::Approx(2.0 * p01).epsilon(1e-13));
  CHECK(p.row(0).sum() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(p.row(1).sum() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(p.minCoeff() >= 0.0);
}

TEST_CASE("matrix exponential semigroup property") {
  Rng rng(60);
  const int s = 6;
  Eigen::MatrixXd q(s, s);
  for (int i = 0; i < s; ++i) {
    double total = 0.0;
    for (int j = 0; j < s; ++j) {
      if (i == j) continue;
      q(i, j) = rng.exponential(1.0);
      total += q(i, j);
    }
    q(i, i) = -total;
  }
  Eigen::MatrixXd half = matrix_exponential(q, 0.7);
  Eigen::MatrixXd fullstep = matrix_exponential(q, 1.4);
  CHECK((half * half - fullstep).cwiseAbs().maxCoeff() < 1e-12);
  // h = 0 gives the identity.
  Eigen::MatrixXd none = matrix_exponential(q, 0.0);
  CHECK((none - Eigen::MatrixXd::Identity(s, s)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("matrix exponential validates its generator") {
  Eigen::MatrixXd not_conservative(2, 2);
  not_conservative << -1.0, 0.5, 2.0, -2.0;
  CHECK_THROWS_AS(matrix_exponential(not_conservative, 1.0), DomainError);

  Eigen::MatrixXd negative_rate(2, 2);
  negative_rate << 1.0, -1.0, 2.0, -2.0;
  CHECK_THROWS_AS(matrix_exponential(negative_rate, 1.0), DomainError);

  Eigen::MatrixXd ok(2, 2);
  ok << -1.0, 1.0, 2.0, -2.0;
  CHECK_THROWS_AS(matrix_exponential(ok, -0.5), DomainError);
  CHECK_THROWS_AS(matrix_exponential(ok, std::nan("")), DomainError);
}

TEST_CASE("interpolated row evaluates its closed form") {
  // Binary site, sqrt weight: rate e^-1 toward the ratio e^-2 value.
  Eigen::Vector2d lr(0.0, -2.0);
  RateRow row = rate_row(lr, 0, WeightKind::kSqrt);
  const double h = 0.9;
  Eigen::VectorXd p = interpolated_row(row, lr, 0, h);
  const double nu1 = std::exp(-2.0) / (1.0 + std::exp(-2.0));
  const double expected = nu1 * -std::expm1(-h * std::exp(-1.0) / nu1);
  CHECK(p[1] == doctest::Approx(expected).epsilon(1e-14));
  CHECK(p[0] == doctest::Approx(1.0 - expected).epsilon(1e-14));

  // h = 0 keeps the chain put, huge h lands on the local stationary law.
  Eigen::VectorXd at0 = interpolated_row(row, lr, 0, 0.0);
  CHECK(at0[0] == 1.0);
  CHECK(at0[1] == 0.0);
  Eigen::VectorXd atinf = interpolated_row(row, lr, 0, 1e12);
  CHECK(atinf[1] == doctest::Approx(nu1).epsilon(1e-12));

  CHECK_THROWS_AS(interpolated_row(row, lr, 0, -1.0), DomainError);
  CHECK_THROWS_AS(interpolated_row(row, lr, 0, std::nan("")), DomainError);
}

TEST_CASE("interpolated row survives extreme ratios") {
  Eigen::Vector3d lr(0.0, -800.0, 700.0);
  RateRow row = rate_row(lr, 0, WeightKind::kSqrt);
  Eigen::VectorXd p = interpolated_row(row, lr, 0, 1.0);
  CHECK(std::isfinite(p.sum()));
  CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.minCoeff() >= 0.0);
}

TEST_CASE("forward Euler row and its boundary clamp") {
  Eigen::VectorXd lr = Eigen::VectorXd::Zero(4);
  RateRow row{0, Eigen::VectorXd::Zero(4)};
  row.rates << -3.0, 1.0, 1.0, 1.0;

  bool clamped = true;
  Eigen::VectorXd mild = euler_row(row, 0, 0.1, &clamped);
  CHECK_FALSE(clamped);
  CHECK(mild[0] == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(mild[1] == doctest::Approx(0.1).epsilon(1e-15));

  Eigen::VectorXd hit = euler_row(row, 0, 1.0, &clamped);
  CHECK(clamped);
  CHECK(hit[0] == 0.0);
  CHECK(hit[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(hit.sum() == doctest::Approx(1.0).epsilon(1e-15));

  // Exactly at the boundary there is nothing to clamp.
  Eigen::VectorXd at_edge = euler_row(row, 0, 1.0 / 3.0, &clamped);
  CHECK_FALSE(clamped);
  CHECK(at_edge[0] == doctest::Approx(0.0));
}

TEST_CASE("softmax row with step penalty") {
  Eigen::Vector2d lr(0.0, 1.6);
  const double alpha = 0.8;
  Eigen::VectorXd p = dmala_row(lr, 0, alpha);
  // Unnormalized masses: 1 at the current value, e^{lr/2 - 1/(2a)} at the other.
  const double other = std::exp(0.8 - 1.0 / 1.6);
  CHECK(p[0] == doctest::Approx(1.0 / (1.0 + other)).epsilon(1e-14));
  CHECK(p[1] == doctest::Approx(other / (1.0 + other)).epsilon(1e-14));

  // Barker variant swaps the weight function.
  Eigen::VectorXd pb = dmala_row(lr, 0, alpha, WeightKind::kBarker);
  const double other_b = std::exp(-std::log1p(std::exp(-1.6)) - 1.0 / 1.6);
  CHECK(pb[1] == doctest::Approx(other_b / (1.0 + other_b)).epsilon(1e-13));

  CHECK_THROWS_AS(dmala_row(lr, 0, 0.0), DomainError);
  CHECK_THROWS_AS(dmala_row(lr, 0, -1.0), DomainError);
}

TEST_CASE("softmax row shares Euler proportions at the matched step") {
  Rng rng(61);
  for (int rep = 0; rep < 20; ++rep) {
    const int c = 5;
    Eigen::VectorXd lr(c);
    for (int j = 0; j < c; ++j) lr[j] = 2.0 * (rng.uniform() - 0.5);
    lr[2] = 0.0;
    const double alpha = 0.3 + rng.uniform();
    RateRow row = rate_row(lr, 2, WeightKind::kSqrt);
    bool clamped = false;
    Eigen::VectorXd e = euler_row(row, 2, std::exp(-1.0 / (2.0 * alpha)), &clamped);
    Eigen::VectorXd d = dmala_row(lr, 2, alpha);
    double ref = 0.0;
    for (int j = 0; j < c; ++j) {
      if (j == 2) continue;
      const double ratio = e[j] / d[j];
      if (ref == 0.0)
        ref = ratio;
      else
        CHECK(ratio == doctest::Approx(ref).epsilon(1e-13));
    }
    CHECK(e[2] <= d[2] + 1e-15);
  }
}
