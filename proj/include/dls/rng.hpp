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

#ifndef DLS_RNG_HPP
#define DLS_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

namespace dls {

// SplitMix64 mixing step. Used to derive independent, reproducible streams;
// never used as the sampling engine itself.
std::uint64_t splitmix64(std::uint64_t& state);

// Collapses (seed, sampler index, chain index) into one stream id. Distinct
// inputs give (for all practical purposes) distinct, well-mixed ids, so every
// chain owns a private mt19937_64 regardless of scheduling.
std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t sampler_index,
                            std::uint64_t chain_index);

// Deterministic random source: a seeded mt19937_64 plus hand-rolled
// transforms. std::*_distribution is avoided on purpose — its output is
// not pinned across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t stream_id) : engine_(stream_id) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform();

  // Uniform integer in {0, ..., n-1} via rejection sampling (unbiased).
  std::uint32_t below(std::uint32_t n);

  // Standard normal (Box-Muller, both values used).
  double normal();

  // Exponential with the given rate.
  double exponential(double rate);

  // Index ~ probs (need not be normalized). Never returns a zero-mass index.
  int categorical(const Eigen::VectorXd& probs);

  // Index ~ softmax(logits); also returns log of the chosen probability.
  // -inf logits mark excluded indices.
  int categorical_logits(const Eigen::VectorXd& logits, double* log_prob = nullptr);

  // k distinct values from {0, ..., n-1}, in random order (partial Fisher-Yates).
  std::vector<int> distinct(int n, int k);

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

// log(sum(exp(logits))) ignoring -inf entries; -inf when all are excluded.
double log_sum_exp(const Eigen::VectorXd& logits);

}  // namespace dls

#endif  // DLS_RNG_HPP
