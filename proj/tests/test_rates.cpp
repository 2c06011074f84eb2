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

#include <doctest.h>

#include "dls/enumeration.hpp"
#include "dls/params_io.hpp"
#include "dls/rates.hpp"

using namespace dls;

TEST_CASE("single-site rates follow the weight of the ratio") {
  // One binary site with potentials (0, 2): ratio to the other value is e^-2.
  Eigen::Vector2d lr(0.0, -2.0);
  RateRow sq = rate_row(lr, 0, WeightKind::kSqrt);
  CHECK(sq.rates[1] == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(sq.rates[0] == doctest::Approx(-std::exp(-1.0)).epsilon(1e-15));

  RateRow ba = rate_row(lr, 0, WeightKind::kBarker);
  CHECK(ba.rates[1] ==
        doctest::Approx(1.0 / (1.0 + std::exp(2.0))).epsilon(1e-14));

  // From the other value the ratio inverts.
  Eigen::Vector2d flipped(2.0, 0.0);
  RateRow back = rate_row(flipped, 1, WeightKind::kSqrt);
  CHECK(back.rates[0] == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
}

TEST_CASE("model overload matches the raw overload") {
  Rng rng(50);
  BernoulliModel model(generate_bernoulli(4, 3, 1.0, rng));
  State x(4, 3);
  x.values = {2, 0, 1, 1};
  for (int site = 0; site < 4; ++site) {
    LocalRatios lr = model.local_log_ratios(x, site);
    RateRow from_lr = rate_row(lr.log_ratios, x.values[site], WeightKind::kBarker);
    RateRow from_model = rate_row(model, x, site, WeightKind::kBarker);
    CHECK(from_model.site == site);
    CHECK((from_model.rates - from_lr.rates).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("diagonal balances the row exactly") {
  Rng rng(51);
  IsingModel model(generate_potts(2, 2, 4, 0.7, rng));
  State x(4, 4);
  x.values = {3, 1, 0, 2};
  for (int site = 0; site < 4; ++site) {
    RateRow row = rate_row(model, x, site, WeightKind::kSqrt);
    CHECK(row.rates.sum() == doctest::Approx(0.0).epsilon(1e-14));
    for (int j = 0; j < 4; ++j)
      if (j != x.values[site]) CHECK(row.rates[j] > 0.0);
    CHECK(row.rates[x.values[site]] < 0.0);
  }
}

TEST_CASE("full generator is supported on single-site moves only") {
  Rng rng(52);
  IsingModel model(generate_potts(2, 2, 3, 0.5, rng));
  FullRateMatrix full = full_rate_matrix(model, WeightKind::kSqrt);
  const auto size = static_cast<Eigen::Index>(full.space.size());
  REQUIRE(full.q.rows() == size);
  for (Eigen::Index s = 0; s < size; ++s) {
    State xs = full.space.decode(static_cast<std::uint64_t>(s));
    int nonzero = 0;
    for (Eigen::Index t = 0; t < size; ++t) {
      if (t == s) continue;
      State xt = full.space.decode(static_cast<std::uint64_t>(t));
      int hamming = 0;
      for (int n = 0; n < 4; ++n) hamming += xs.values[n] != xt.values[n];
      if (hamming == 1) {
        CHECK(full.q(s, t) > 0.0);
        ++nonzero;
      } else {
        CHECK(full.q(s, t) == 0.0);
      }
    }
    CHECK(nonzero == 4 * 2);  // N (C-1) neighbors
    CHECK(full.q.row(s).sum() == doctest::Approx(0.0).epsilon(1e-13));
  }
}

TEST_CASE("rates satisfy detailed balance against the target") {
  Rng rng(53);
  BernoulliModel model(generate_bernoulli(4, 2, 1.5, rng));
  EnumeratedTarget target = enumerate_distribution(model);
  for (WeightKind kind : {WeightKind::kSqrt, WeightKind::kBarker}) {
    FullRateMatrix full = full_rate_matrix(model, kind);
    const auto size = static_cast<Eigen::Index>(full.space.size());
    for (Eigen::Index i = 0; i < size; ++i)
      for (Eigen::Index j = 0; j < size; ++j) {
        if (i == j) continue;
        const double forward = target.probs[i] * full.q(i, j);
        const double backward = target.probs[j] * full.q(j, i);
        CHECK(forward == doctest::Approx(backward).epsilon(1e-12));
      }
  }
}

TEST_CASE("full generator refuses oversized spaces") {
  Rng rng(54);
  BernoulliModel big(generate_bernoulli(30, 2, 1.0, rng));
  CHECK_THROWS_AS(full_rate_matrix(big, WeightKind::kSqrt), CapacityError);
}
