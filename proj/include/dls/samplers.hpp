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

#ifndef DLS_SAMPLERS_HPP
#define DLS_SAMPLERS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dls/model.hpp"
#include "dls/rng.hpp"
#include "dls/state.hpp"
#include "dls/weight.hpp"

namespace dls {

enum class SamplerKind {
  kRwm,          // random walk Metropolis, `flips` sites per proposal
  kBlockGibbs,   // exact resampling of a random block of `block_size` sites
  kHammingBall,  // auxiliary-variable ball sampler, radius 1 in a random block
  kGwg,          // single-site locally balanced proposal + M-H
  kPas,          // path of `flips` locally balanced jumps + M-H
  kDmala,        // factorized softmax proposal with step penalty + M-H
  kDlmcf,        // factorized forward-Euler rows + M-H
  kDlmc,         // factorized interpolated rows + M-H
};

// Where proposals get their local log-ratios: exact conditionals or the
// one-hot Taylor surrogate (cheaper for models with expensive conditionals;
// the M-H correction then always uses true energies).
enum class RatioSource { kExact, kGradient };

struct SamplerConfig {
  SamplerKind kind = SamplerKind::kGwg;
  WeightKind weight = WeightKind::kSqrt;
  RatioSource ratio_source = RatioSource::kExact;
  double step = 1.0;   // simulation time h (dlmc/dlmcf) or alpha (dmala)
  int flips = 1;       // rwm sites per proposal / pas path length; on binary
                       // models prefer odd values (an even number of bit
                       // flips can never change state parity)
  int block_size = 2;  // block_gibbs and hamming_ball block
};

struct RunRecord {
  long long steps = 0;
  long long accepted = 0;
  long long energy_evals = 0;  // charged by convention, see evals_per_step
  long long clamp_events = 0;  // clamped forward Euler rows (dlmcf)
  std::vector<double> trace;   // per-step summaries, filled by the caller
};

struct Chain {
  State x;
  double log_pi_x = 0.0;  // running -energy(x)
  Rng rng;
  std::uint64_t stream_id = 0;
  RunRecord record;
};

// Fresh chain with a uniformly random initial state on its own rng stream.
Chain make_chain(const EnergyModel& model, std::uint64_t stream_id);

// Metropolis-Hastings accept/reject. -inf is allowed for log_pi_y and
// log_q_yx (certain rejection); NaN anywhere is an error.
bool mh_accept(double log_pi_x, double log_pi_y, double log_q_xy, double log_q_yx,
               Rng& rng);
// The acceptance probability min(1, ratio) behind mh_accept.
double mh_accept_prob(double log_pi_x, double log_pi_y, double log_q_xy,
                      double log_q_yx);

// Advances the chain by one transition of the configured kernel and returns
// the step's acceptance probability (1 for rejection-free kernels). Updates
// chain.record counters; the trace is left to the caller.
double step(Chain& chain, const EnergyModel& model, const SamplerConfig& config);

// Energy-evaluation charge per step. Convention: one full conditional sweep
// or gradient sweep costs 1, one energy costs 1. Cached quantities are still
// charged:
//   rwm 1; block_gibbs 1; hamming_ball 1;
//   gwg 2 (exact) / 4 (gradient);
//   pas flips+1 (exact) / flips+3 (gradient);
//   dmala, dlmcf, dlmc 4 (two sweeps + two energies).
long long evals_per_step(const SamplerConfig& config, int dimension);

// Categorical law over single-site moves (site, value) with logits
// log g(ratio). This is both the GWG proposal and the first-jump law of the
// continuous-time chain.
struct MoveDistribution {
  Eigen::MatrixXd logits;  // N x C, -inf at each site's current value
  double lse = 0.0;
  double prob(int site, int value) const;
};

MoveDistribution single_site_move_distribution(const EnergyModel& model,
                                               const State& x, WeightKind kind,
                                               RatioSource source);

const char* to_string(SamplerKind kind);
SamplerKind sampler_from_string(const std::string& name);
const char* to_string(RatioSource source);
RatioSource ratio_source_from_string(const std::string& name);
bool has_tunable(SamplerKind kind);

}  // namespace dls

#endif  // DLS_SAMPLERS_HPP
