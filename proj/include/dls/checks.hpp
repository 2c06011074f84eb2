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

#ifndef DLS_CHECKS_HPP
#define DLS_CHECKS_HPP

#include <string>
#include <vector>

#include <json.hpp>

namespace dls {

// Outcome of one self-check. `observed` is the worst-case statistic measured
// and `tolerance` the bound it must satisfy.
struct CheckResult {
  std::string name;
  bool pass = false;
  double observed = 0.0;
  double tolerance = 0.0;
  double seconds = 0.0;
  std::string note;
};

struct ValidationOptions {
  bool quick = false;  // skip the long-running chain-exactness suite
  // Negative control: deliberately corrupt the interpolated rows inside the
  // exactness check; validation must then fail.
  bool corrupt_interpolated_row = false;
  int threads = 0;
};

// Fast structural/algebraic checks --------------------------------------

// Balance identity log g(t) = log t + log g(1/t) over log t in [-18, 18].
CheckResult check_weight_balance_identity();
// Interpolated rows match exp(hQ) and the two-state closed form on
// log-spaced (alpha, beta, h) grids.
CheckResult check_interpolated_c2_exactness(bool corrupt = false);
// h -> 0 identity + derivative and h -> inf local-stationary limits.
CheckResult check_row_boundary_conditions();
// All transition rows are stochastic; self-mass shrinks as the step grows;
// Euler clamping keeps rows valid.
CheckResult check_row_stochasticity();
// pi Q = 0 for enumerated rate matrices of every model family.
CheckResult check_rate_stationarity();
// Conductance-form flow equals the master-equation flow.
CheckResult check_conductance_equivalence();
// KL along the integrated flow decreases monotonically to ~0.
CheckResult check_dwgf_descent();
// Gillespie first-jump frequencies match the single-site move law.
CheckResult check_gillespie_first_jump();
// Move law from exact conditionals equals brute-force energy differences;
// a length-1 path proposal is the same categorical.
CheckResult check_gwg_pas_single_jump();
// Euler and penalized-softmax rows share off-diagonal proportions at
// h = exp(-1/(2*alpha)); the softmax keeps more self-mass.
CheckResult check_dmala_euler_structure();
// At huge h the interpolated kernel proposes exact independent site
// marginals on factorized targets and accepts (almost) everything.
CheckResult check_factorized_degeneration(bool full_scale);

// Long-running checks ----------------------------------------------------

// Every sampler kind reproduces enumerated targets in total variation.
CheckResult check_chain_exactness(int threads);

nlohmann::json checks_to_json(const std::vector<CheckResult>& checks);
bool all_passed(const std::vector<CheckResult>& checks);

// The `validate` suite: all fast checks, plus chain exactness unless quick.
std::vector<CheckResult> run_validation_checks(const ValidationOptions& options);

}  // namespace dls

#endif  // DLS_CHECKS_HPP
