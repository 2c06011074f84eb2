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

#include "dls/rng.hpp"

#include <cmath>
#include <numbers>

#include "dls/errors.hpp"

namespace dls {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t sampler_index,
                            std::uint64_t chain_index) {
  std::uint64_t s = seed;
  std::uint64_t h = splitmix64(s);
  s = h ^ sampler_index;
  h = splitmix64(s);
  s = h ^ chain_index;
  return splitmix64(s);
}

double Rng::uniform() {
  // 53-bit mantissa; value in [0, 1).
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint32_t Rng::below(std::uint32_t n) {
  if (n == 0) throw DomainError("Rng::below: n must be positive");
  // Rejection sampling on the top bits to stay unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return static_cast<std::uint32_t>(v % n);
}

double Rng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  // Box-Muller; u1 bounded away from 0.
  double u1 = 1.0 - uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * std::numbers::pi * u2;
  cached_normal_ = r * std::sin(a);
  has_cached_normal_ = true;
  return r * std::cos(a);
}

double Rng::exponential(double rate) {
  if (!(rate > 0.0)) throw DomainError("Rng::exponential: rate must be positive");
  return -std::log(1.0 - uniform()) / rate;
}

int Rng::categorical(const Eigen::VectorXd& probs) {
  double total = 0.0;
  for (int i = 0; i < probs.size(); ++i) {
    const double p = probs[i];
    if (p < 0.0 || !std::isfinite(p))
      throw DomainError("Rng::categorical: weights must be finite and nonnegative");
    total += p;
  }
  if (!(total > 0.0))
    throw DomainError("Rng::categorical: weights must sum to a positive value");
  double u = uniform() * total;
  int last_positive = -1;
  for (int i = 0; i < probs.size(); ++i) {
    const double p = probs[i];
    if (p > 0.0) last_positive = i;
    u -= p;
    if (u < 0.0 && p > 0.0) return i;
  }
  // Floating-point tail: fall back to the last index with positive mass.
  return last_positive;
}

int Rng::categorical_logits(const Eigen::VectorXd& logits, double* log_prob) {
  const double lse = log_sum_exp(logits);
  if (std::isinf(lse))
    throw DomainError("Rng::categorical_logits: all logits are -inf");
  Eigen::VectorXd probs(logits.size());
  for (int i = 0; i < logits.size(); ++i)
    probs[i] = std::isinf(logits[i]) ? 0.0 : std::exp(logits[i] - lse);
  const int idx = categorical(probs);
  if (log_prob != nullptr) *log_prob = logits[idx] - lse;
  return idx;
}

std::vector<int> Rng::distinct(int n, int k) {
  if (k < 0 || k > n) throw DomainError("Rng::distinct: need 0 <= k <= n");
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  std::vector<int> out(k);
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(below(static_cast<std::uint32_t>(n - i)));
    std::swap(pool[i], pool[j]);
    out[i] = pool[i];
  }
  return out;
}

double log_sum_exp(const Eigen::VectorXd& logits) {
  double m = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < logits.size(); ++i) {
    if (std::isnan(logits[i])) throw DomainError("log_sum_exp: NaN logit");
    if (logits[i] > m) m = logits[i];
  }
  if (std::isinf(m)) return m;
  double s = 0.0;
  for (int i = 0; i < logits.size(); ++i)
    if (!std::isinf(logits[i])) s += std::exp(logits[i] - m);
  return m + std::log(s);
}

}  // namespace dls
