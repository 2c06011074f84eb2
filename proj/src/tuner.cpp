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

#include "dls/tuner.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dls/errors.hpp"

namespace dls {

namespace {

constexpr double kGain = 2.0;        // SA gain constant c in gamma_k = c/(k0+k)^0.6
constexpr double kGainOffset = 9.0;  // k0: caps gamma_1 at ~0.5 so one lucky
                                     // early step cannot vault the parameter
                                     // across a low-acceptance valley
constexpr double kStepLow = 1e-9;    // bounds for continuous step parameters
constexpr double kStepHigh = 1e12;
constexpr int kWindow = 1000;        // trailing acceptance window

}  // namespace

TuneResult tune(const SamplerConfig& config, const EnergyModel& model,
                double target_rate, long long adaptation_steps, Rng rng) {
  if (!has_tunable(config.kind))
    throw DomainError("tune: sampler has no tunable hyperparameter");
  if (!(target_rate > 0.0 && target_rate < 1.0))
    throw DomainError("tune: target rate must lie in (0, 1)");
  if (adaptation_steps < 1) throw DomainError("tune: need at least one step");

  const bool integer_param =
      config.kind == SamplerKind::kRwm || config.kind == SamplerKind::kPas;
  const double lo = integer_param ? 0.0 : std::log(kStepLow);
  const double hi = integer_param ? std::log(static_cast<double>(model.dimension()))
                                  : std::log(kStepHigh);

  SamplerConfig cfg = config;
  double log_theta =
      std::clamp(std::log(integer_param ? static_cast<double>(cfg.flips) : cfg.step),
                 lo, hi);
  const auto apply = [&] {
    if (integer_param)
      cfg.flips = std::clamp(static_cast<int>(std::lround(std::exp(log_theta))), 1,
                             model.dimension());
    else
      cfg.step = std::exp(log_theta);
  };

  Chain chain = make_chain(model, rng.raw());
  const int window = static_cast<int>(std::min<long long>(kWindow, adaptation_steps));
  std::vector<char> accepted_ring(static_cast<std::size_t>(window), 0);

  for (long long k = 1; k <= adaptation_steps; ++k) {
    apply();
    const long long before = chain.record.accepted;
    const double prob = step(chain, model, cfg);
    accepted_ring[static_cast<std::size_t>(k % window)] =
        chain.record.accepted > before ? 1 : 0;
    // Robbins-Monro on log theta; the smooth acceptance probability gives a
    // lower-variance update than the binary outcome.
    const double gamma = kGain / std::pow(kGainOffset + static_cast<double>(k), 0.6);
    log_theta = std::clamp(log_theta + gamma * (prob - target_rate), lo, hi);
  }
  apply();

  double trailing = 0.0;
  for (char a : accepted_ring) trailing += a;
  trailing /= static_cast<double>(window);

  TuneResult result;
  result.config = cfg;
  result.trailing_acceptance = trailing;
  result.converged = std::abs(trailing - target_rate) <= 0.05;
  result.saturated = log_theta <= lo + 1e-12 || log_theta >= hi - 1e-12;
  result.steps = adaptation_steps;
  return result;
}

}  // namespace dls
