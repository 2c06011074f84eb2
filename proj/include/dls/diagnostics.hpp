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

#ifndef DLS_DIAGNOSTICS_HPP
#define DLS_DIAGNOSTICS_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "dls/enumeration.hpp"
#include "dls/samplers.hpp"

namespace dls {

// Biased (1/L) autocovariances c_0..c_{L-1} of the trace, FFT-accelerated.
Eigen::VectorXd autocovariance(const std::vector<double>& trace);

struct EssReport {
  double ess = 0.0;
  long long cutoff_lag = 0;  // first lag excluded by the positive-sequence rule
  bool degenerate = false;   // (numerically) zero-variance trace
};

// Effective sample size by Geyer's initial monotone positive sequence:
// pair the autocorrelations, truncate at the first non-positive pair, enforce
// monotonicity, tau = max(1, 2*sum - 1), ess = L / tau. A constant trace
// reports ess 0 with the degenerate flag; traces shorter than 10 are an error.
EssReport effective_sample_size(const std::vector<double>& trace);

struct DistributionReport {
  double tv = 0.0;                 // total variation to the exact target
  double kl = 0.0;                 // KL(empirical || target), 0 log 0 = 0
  double max_marginal_error = 0.0; // worst |empirical - exact| site marginal
};

// Compares encoded sample indices against an enumerated target.
DistributionReport compare_to_exact(const std::vector<std::uint32_t>& samples,
                                    const EnumeratedTarget& target);

// Flat per-chain record assembled from the run counters and the ESS report.
struct Summary {
  long long steps = 0;
  long long energy_evals = 0;
  double acceptance_rate = 0.0;
  double clamp_rate = 0.0;
  double ess = 0.0;
  double ess_per_eval = 0.0;
  double ess_per_second = 0.0;  // 0 when timing was disabled
  bool degenerate = false;
};

Summary summarize(const RunRecord& record, const EssReport& ess, double seconds);

}  // namespace dls

#endif  // DLS_DIAGNOSTICS_HPP
