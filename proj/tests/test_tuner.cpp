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

#include "dls/errors.hpp"
#include "dls/models/bernoulli.hpp"
#include "dls/models/ising.hpp"
#include "dls/tuner.hpp"
#include "doctest.h"

using namespace dls;

namespace {

IsingModel small_lattice(int side, double lambda, double field,
                         std::uint64_t seed) {
  IsingParams p;
  p.rows = side;
  p.cols = side;
  p.lambda = lambda;
  p.theta = Eigen::MatrixXd::Zero(side * side, 2);
  Rng rng(seed);
  for (int i = 0; i < side * side; ++i) p.theta(i, 1) = field * rng.normal();
  return IsingModel(p);
}

}  // namespace

TEST_CASE("tuner drives dlmc to the target acceptance") {
  const IsingModel model = small_lattice(8, 0.4, 0.5, 3);
  SamplerConfig cfg;
  cfg.kind = SamplerKind::kDlmc;
  cfg.step = 1.0;
  const TuneResult result = tune(cfg, model, 0.574, 2000, Rng(11));
  CHECK(result.steps == 2000);
  CHECK(result.config.step > 0.0);
  CHECK(!result.saturated);
  CHECK(std::abs(result.trailing_acceptance - 0.574) < 0.08);
  CHECK(result.converged == (std::abs(result.trailing_acceptance - 0.574) <= 0.05));
}

TEST_CASE("tuner drives rwm flip count to the target acceptance") {
  const IsingModel model = small_lattice(8, 0.4, 0.5, 5);
  SamplerConfig cfg;
  cfg.kind = SamplerKind::kRwm;
  cfg.flips = 8;
  const TuneResult result = tune(cfg, model, 0.234, 2000, Rng(13));
  CHECK(result.config.flips >= 1);
  CHECK(result.config.flips <= model.dimension());
  CHECK(std::abs(result.trailing_acceptance - 0.234) < 0.1);
}

TEST_CASE("tuner reports saturation when the target is unreachable") {
  // On a flat target every dlmc proposal is accepted no matter the step, so
  // chasing acceptance 0.574 drags h to the upper bound.
  const BernoulliModel model(BernoulliParams{Eigen::MatrixXd::Zero(6, 2)});
  SamplerConfig cfg;
  cfg.kind = SamplerKind::kDlmc;
  cfg.step = 1.0;
  const TuneResult result = tune(cfg, model, 0.574, 1500, Rng(17));
  CHECK(result.saturated);
  CHECK(!result.converged);
  CHECK(result.config.step == doctest::Approx(1e12));
  CHECK(result.trailing_acceptance == doctest::Approx(1.0));
}

TEST_CASE("tuner rejects kernels without a tunable parameter") {
  const BernoulliModel model(BernoulliParams{Eigen::MatrixXd::Zero(4, 2)});
  SamplerConfig cfg;
  cfg.kind = SamplerKind::kGwg;
  CHECK_THROWS_AS(tune(cfg, model, 0.5, 100, Rng(19)), DomainError);
  cfg.kind = SamplerKind::kBlockGibbs;
  CHECK_THROWS_AS(tune(cfg, model, 0.5, 100, Rng(19)), DomainError);
}

TEST_CASE("tuner rejects invalid targets and step budgets") {
  const BernoulliModel model(BernoulliParams{Eigen::MatrixXd::Zero(4, 2)});
  SamplerConfig cfg;
  cfg.kind = SamplerKind::kDlmc;
  CHECK_THROWS_AS(tune(cfg, model, 0.0, 100, Rng(19)), DomainError);
  CHECK_THROWS_AS(tune(cfg, model, 1.5, 100, Rng(19)), DomainError);
  CHECK_THROWS_AS(tune(cfg, model, 0.5, 0, Rng(19)), DomainError);
}

TEST_CASE("tuning is deterministic in the rng stream") {
  const IsingModel model = small_lattice(6, 0.4, 0.5, 7);
  SamplerConfig cfg;
  cfg.kind = SamplerKind::kDmala;
  cfg.step = 0.5;
  const TuneResult a = tune(cfg, model, 0.574, 500, Rng(23));
  const TuneResult b = tune(cfg, model, 0.574, 500, Rng(23));
  CHECK(a.config.step == b.config.step);
  CHECK(a.trailing_acceptance == b.trailing_acceptance);
  const TuneResult c = tune(cfg, model, 0.574, 500, Rng(24));
  CHECK(c.config.step != a.config.step);
}
