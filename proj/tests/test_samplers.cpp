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
#include <cstdint>
#include <limits>
#include <vector>

#include "dls/diagnostics.hpp"
#include "dls/enumeration.hpp"
#include "dls/errors.hpp"
#include "dls/models/bernoulli.hpp"
#include "dls/models/ising.hpp"
#include "dls/samplers.hpp"
#include "doctest.h"

using namespace dls;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

BernoulliModel small_bernoulli(int n, int c, double scale, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd theta(n, c);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < c; ++j) theta(i, j) = scale * rng.normal();
  theta.col(0).setZero();
  return BernoulliModel(BernoulliParams{theta});
}

int hamming(const State& a, const State& b) {
  int d = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    d += a.values[i] != b.values[i];
  return d;
}

// Long-run TV distance of a kernel against the enumerated target.
double chain_tv(const EnergyModel& model, const SamplerConfig& cfg,
                std::uint64_t stream, int burn, int keep) {
  const EnumeratedTarget target = enumerate_distribution(model);
  Chain chain = make_chain(model, stream);
  for (int i = 0; i < burn; ++i) step(chain, model, cfg);
  std::vector<std::uint32_t> samples;
  samples.reserve(keep);
  for (int i = 0; i < keep; ++i) {
    step(chain, model, cfg);
    samples.push_back(static_cast<std::uint32_t>(target.space.encode(chain.x)));
  }
  return compare_to_exact(samples, target).tv;
}

}  // namespace

TEST_CASE("mh_accept_prob basics") {
  CHECK(mh_accept_prob(0.0, 1.0, 0.0, 0.0) == 1.0);
  CHECK(mh_accept_prob(0.0, -1.0, 0.0, 0.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(mh_accept_prob(0.0, 0.0, 0.0, 0.0) == 1.0);
  // Proposal-density asymmetry enters with the usual signs.
  CHECK(mh_accept_prob(0.0, 0.0, -2.0, -3.0) == doctest::Approx(std::exp(-1.0)));
  // Certain rejection when the proposal has zero mass or zero return density.
  CHECK(mh_accept_prob(0.0, -kInf, 0.0, 0.0) == 0.0);
  CHECK(mh_accept_prob(0.0, 0.0, 0.0, -kInf) == 0.0);
}

TEST_CASE("mh_accept_prob rejects invalid inputs") {
  CHECK_THROWS_AS(mh_accept_prob(kNan, 0.0, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(mh_accept_prob(0.0, kNan, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(mh_accept_prob(0.0, 0.0, 0.0, kNan), DomainError);
  // The current state must have positive mass and a proper proposal density.
  CHECK_THROWS_AS(mh_accept_prob(-kInf, 0.0, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(mh_accept_prob(0.0, 0.0, -kInf, 0.0), DomainError);
  CHECK_THROWS_AS(mh_accept_prob(kInf, 0.0, 0.0, 0.0), DomainError);
}

TEST_CASE("mh_accept draws against the acceptance probability") {
  Rng rng(91);
  int hits = 0;
  const int reps = 20000;
  for (int i = 0; i < reps; ++i)
    hits += mh_accept(0.0, -1.0, 0.0, 0.0, rng);
  const double p = std::exp(-1.0);
  const double se = std::sqrt(p * (1 - p) / reps);
  CHECK(std::abs(hits / static_cast<double>(reps) - p) < 4 * se);
}

TEST_CASE("energy evaluation accounting") {
  const BernoulliModel model = small_bernoulli(6, 3, 0.5, 17);
  struct Case {
    SamplerKind kind;
    RatioSource source;
    int flips;
    long long per_step;
  };
  const Case cases[] = {
      {SamplerKind::kRwm, RatioSource::kExact, 2, 1},
      {SamplerKind::kBlockGibbs, RatioSource::kExact, 1, 1},
      {SamplerKind::kHammingBall, RatioSource::kExact, 1, 1},
      {SamplerKind::kGwg, RatioSource::kExact, 1, 2},
      {SamplerKind::kGwg, RatioSource::kGradient, 1, 4},
      {SamplerKind::kPas, RatioSource::kExact, 3, 4},
      {SamplerKind::kPas, RatioSource::kGradient, 3, 6},
      {SamplerKind::kDmala, RatioSource::kExact, 1, 4},
      {SamplerKind::kDlmcf, RatioSource::kExact, 1, 4},
      {SamplerKind::kDlmc, RatioSource::kExact, 1, 4},
  };
  for (const Case& c : cases) {
    CAPTURE(to_string(c.kind));
    SamplerConfig cfg;
    cfg.kind = c.kind;
    cfg.ratio_source = c.source;
    cfg.flips = c.flips;
    cfg.step = 0.5;
    cfg.block_size = 2;
    CHECK(evals_per_step(cfg, model.dimension()) == c.per_step);
    Chain chain = make_chain(model, 3);
    for (int i = 0; i < 57; ++i) step(chain, model, cfg);
    CHECK(chain.record.steps == 57);
    CHECK(chain.record.energy_evals == 57 * c.per_step);
  }
}

TEST_CASE("rwm moves zero or exactly `flips` sites") {
  const BernoulliModel model = small_bernoulli(6, 3, 1.0, 23);
  SamplerConfig cfg;
  cfg.kind = SamplerKind::kRwm;
  cfg.flips = 2;
  Chain chain = make_chain(model, 5);
  int moved = 0;
  for (int i = 0; i < 500; ++i) {
    const State before = chain.x;
    step(chain, model, cfg);
    const int d = hamming(before, chain.x);
    CHECK((d == 0 || d == cfg.flips));
    moved += d != 0;
  }
  CHECK(moved > 0);
  CHECK(chain.record.accepted == moved);
}

TEST_CASE("rwm caps flips at the dimension") {
  const BernoulliModel model = small_bernoulli(3, 2, 0.5, 29);
  SamplerConfig cfg;
  cfg.kind = SamplerKind::kRwm;
  cfg.flips = 50;
  Chain chain = make_chain(model, 6);
  const State before = chain.x;
  step(chain, model, cfg);
  const int d = hamming(before, chain.x);
  CHECK((d == 0 || d == 3));
}

TEST_CASE("block gibbs is rejection free") {
  const BernoulliModel model = small_bernoulli(5, 2, 1.0, 31);
  SamplerConfig cfg;
  cfg.kind = SamplerKind::kBlockGibbs;
  cfg.block_size = 2;
  Chain chain = make_chain(model, 7);
  for (int i = 0; i < 200; ++i) CHECK(step(chain, model, cfg) == 1.0);
  CHECK(chain.record.accepted == chain.record.steps);
}

TEST_CASE("block gibbs over the whole space samples the target exactly") {
  const BernoulliModel model = small_bernoulli(3, 2, 1.0, 37);
  SamplerConfig cfg;
  cfg.kind = SamplerKind::kBlockGibbs;
  cfg.block_size = 3;  // whole space: every step is an independent draw
  CHECK(chain_tv(model, cfg, 8, 0, 20000) < 0.02);
}

TEST_CASE("block gibbs refuses blocks too large to enumerate") {
  const BernoulliModel model = small_bernoulli(20, 2, 0.5, 41);
  SamplerConfig cfg;
  cfg.kind = SamplerKind::kBlockGibbs;
  cfg.block_size = 17;
  Chain chain = make_chain(model, 9);
  CHECK_THROWS_AS(step(chain, model, cfg), CapacityError);
}

TEST_CASE("hamming ball sampler hits the target") {
  const BernoulliModel model = small_bernoulli(4, 2, 0.8, 43);
  SamplerConfig cfg;
  cfg.kind = SamplerKind::kHammingBall;
  cfg.block_size = 2;
  CHECK(chain_tv(model, cfg, 10, 2000, 40000) < 0.03);
}

TEST_CASE("hamming ball moves at most one site per step") {
  // Radius-1 ball around the auxiliary center: x -> u -> y changes at most
  // one site each leg, so consecutive states differ in at most two sites.
  const BernoulliModel model = small_bernoulli(5, 3, 0.7, 47);
  SamplerConfig cfg;
  cfg.kind = SamplerKind::kHammingBall;
  cfg.block_size = 3;
  Chain chain = make_chain(model, 11);
  for (int i = 0; i < 500; ++i) {
    const State before = chain.x;
    step(chain, model, cfg);
    CHECK(hamming(before, chain.x) <= 2);
  }
}

TEST_CASE("gwg exact and gradient move laws agree on multilinear models") {
  // For models whose energy is multilinear in the one-hot encoding, the
  // Taylor surrogate reproduces the exact conditional ratios.
  const BernoulliModel bern = small_bernoulli(5, 3, 0.9, 53);
  IsingParams ip;
  ip.rows = 3;
  ip.cols = 3;
  ip.lambda = 0.6;
  ip.theta = Eigen::MatrixXd::Zero(9, 2);
  {
    Rng rng(59);
    for (int i = 0; i < 9; ++i) ip.theta(i, 1) = rng.normal();
  }
  const IsingModel ising(ip);

  const EnergyModel* models[] = {&bern, &ising};
  Rng rng(61);
  for (const EnergyModel* model : models) {
    State x(model->dimension(), model->n_categories());
    for (int rep = 0; rep < 10; ++rep) {
      for (int n = 0; n < model->dimension(); ++n)
        x.values[n] = static_cast<int>(
            rng.below(static_cast<std::uint32_t>(model->n_categories())));
      const MoveDistribution exact = single_site_move_distribution(
          *model, x, WeightKind::kSqrt, RatioSource::kExact);
      const MoveDistribution grad = single_site_move_distribution(
          *model, x, WeightKind::kSqrt, RatioSource::kGradient);
      for (int n = 0; n < model->dimension(); ++n)
        for (int j = 0; j < model->n_categories(); ++j)
          CHECK(exact.prob(n, j) == doctest::Approx(grad.prob(n, j)).epsilon(1e-12));
    }
  }
}

TEST_CASE("gwg chain hits the target") {
  const BernoulliModel model = small_bernoulli(4, 2, 0.8, 67);
  SamplerConfig cfg;
  cfg.kind = SamplerKind::kGwg;
  CHECK(chain_tv(model, cfg, 12, 2000, 40000) < 0.03);
}

TEST_CASE("pas changes at most `flips` sites per step") {
  const BernoulliModel model = small_bernoulli(6, 3, 0.7, 71);
  SamplerConfig cfg;
  cfg.kind = SamplerKind::kPas;
  cfg.flips = 3;
  Chain chain = make_chain(model, 13);
  for (int i = 0; i < 500; ++i) {
    const State before = chain.x;
    step(chain, model, cfg);
    CHECK(hamming(before, chain.x) <= cfg.flips);
  }
}

TEST_CASE("pas chain hits the target") {
  // Binary spaces need an odd path length: an even number of bit flips
  // preserves the parity of the state and makes the chain reducible.
  const BernoulliModel model = small_bernoulli(4, 2, 0.8, 73);
  SamplerConfig cfg;
  cfg.kind = SamplerKind::kPas;
  cfg.flips = 3;
  CHECK(chain_tv(model, cfg, 14, 2000, 50000) < 0.03);

  // Even lengths are fine as soon as sites have a third value to move to.
  const BernoulliModel ternary = small_bernoulli(3, 3, 0.8, 74);
  cfg.flips = 2;
  CHECK(chain_tv(ternary, cfg, 21, 2000, 50000) < 0.03);
}

TEST_CASE("factorized kernels hit the target") {
  const BernoulliModel model = small_bernoulli(4, 2, 0.8, 79);
  struct Case {
    SamplerKind kind;
    double step;
  };
  const Case cases[] = {
      {SamplerKind::kDmala, 0.6},
      {SamplerKind::kDlmcf, 0.15},
      {SamplerKind::kDlmc, 0.8},
  };
  for (const Case& c : cases) {
    CAPTURE(to_string(c.kind));
    SamplerConfig cfg;
    cfg.kind = c.kind;
    cfg.step = c.step;
    CHECK(chain_tv(model, cfg, 15, 2000, 40000) < 0.03);
  }
}

TEST_CASE("dlmcf counts clamped rows") {
  // Strong fields + a large step push the Euler off-diagonal mass past one.
  const BernoulliModel model = small_bernoulli(6, 2, 4.0, 83);
  SamplerConfig cfg;
  cfg.kind = SamplerKind::kDlmcf;
  cfg.step = 50.0;
  Chain chain = make_chain(model, 16);
  for (int i = 0; i < 50; ++i) step(chain, model, cfg);
  CHECK(chain.record.clamp_events > 0);

  // A tiny step never clamps.
  Chain tame = make_chain(model, 17);
  SamplerConfig tiny = cfg;
  tiny.step = 1e-4;
  for (int i = 0; i < 50; ++i) step(tame, model, tiny);
  CHECK(tame.record.clamp_events == 0);
}

TEST_CASE("dlmc survives extreme energy scales") {
  Eigen::MatrixXd theta(4, 2);
  theta << 0, 600, 0, -600, 0, 600, 0, -600;
  const BernoulliModel model(BernoulliParams{theta});
  SamplerConfig cfg;
  cfg.kind = SamplerKind::kDlmc;
  cfg.step = 1.0;
  Chain chain = make_chain(model, 18);
  for (int i = 0; i < 100; ++i) {
    const double prob = step(chain, model, cfg);
    CHECK(std::isfinite(prob));
    CHECK(std::isfinite(chain.log_pi_x));
  }
  // With h = 1 and these scales every site lands on its mode.
  CHECK(chain.x.values == std::vector<int>({0, 1, 0, 1}));
}

TEST_CASE("single site move distribution normalizes") {
  const BernoulliModel model = small_bernoulli(5, 4, 0.9, 89);
  Chain chain = make_chain(model, 19);
  const MoveDistribution dist = single_site_move_distribution(
      model, chain.x, WeightKind::kBarker, RatioSource::kExact);
  double total = 0.0;
  for (int n = 0; n < model.dimension(); ++n) {
    CHECK(dist.prob(n, chain.x.values[n]) == 0.0);
    for (int j = 0; j < model.n_categories(); ++j) total += dist.prob(n, j);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("make_chain initializes consistently") {
  const BernoulliModel model = small_bernoulli(7, 3, 0.8, 97);
  Chain chain = make_chain(model, 1234);
  CHECK(chain.stream_id == 1234);
  CHECK(chain.x.dimension() == 7);
  CHECK(chain.x.n_categories == 3);
  for (int v : chain.x.values) {
    CHECK(v >= 0);
    CHECK(v < 3);
  }
  CHECK(chain.log_pi_x == -model.energy(chain.x));
  CHECK(chain.record.steps == 0);

  // Same stream, same chain; different stream, (almost surely) different state.
  Chain again = make_chain(model, 1234);
  CHECK(again.x.values == chain.x.values);
}

TEST_CASE("step validates configuration") {
  const BernoulliModel model = small_bernoulli(4, 2, 0.5, 101);
  Chain chain = make_chain(model, 20);
  SamplerConfig cfg;
  cfg.kind = SamplerKind::kRwm;
  cfg.flips = 0;
  CHECK_THROWS_AS(step(chain, model, cfg), DomainError);
  cfg.flips = 1;
  cfg.block_size = 0;
  CHECK_THROWS_AS(step(chain, model, cfg), DomainError);
}

TEST_CASE("sampler kind strings round trip") {
  const char* names[] = {"rwm",  "block_gibbs", "hamming_ball", "gwg",
                         "pas",  "dmala",       "dlmcf",        "dlmc"};
  for (const char* name : names)
    CHECK(std::string(to_string(sampler_from_string(name))) == name);
  CHECK_THROWS_AS(sampler_from_string("metropolis"), ParseError);
  CHECK(std::string(to_string(ratio_source_from_string("exact"))) == "exact");
  CHECK(std::string(to_string(ratio_source_from_string("gradient"))) == "gradient");
  CHECK_THROWS_AS(ratio_source_from_string("taylor"), ParseError);
}

TEST_CASE("has_tunable marks the step-size kernels") {
  CHECK(has_tunable(SamplerKind::kRwm));
  CHECK(has_tunable(SamplerKind::kPas));
  CHECK(has_tunable(SamplerKind::kDmala));
  CHECK(has_tunable(SamplerKind::kDlmcf));
  CHECK(has_tunable(SamplerKind::kDlmc));
  CHECK(!has_tunable(SamplerKind::kGwg));
  CHECK(!has_tunable(SamplerKind::kBlockGibbs));
  CHECK(!has_tunable(SamplerKind::kHammingBall));
}
