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

#include "dls/gillespie.hpp"

#include <cmath>

#include "dls/errors.hpp"

namespace dls {

std::vector<JumpEvent> gillespie_path(const EnergyModel& model, const State& x0,
                                      double t_end, WeightKind kind, Rng& rng,
                                      int max_jumps) {
  if (!(t_end >= 0.0)) throw DomainError("gillespie_path: t_end must be non-negative");
  const int n_sites = model.dimension();
  const int c = model.n_categories();

  State x = x0;
  std::vector<JumpEvent> path;
  path.push_back({0.0, x});

  Eigen::MatrixXd lr;
  Eigen::MatrixXd rates(n_sites, c);
  double t = 0.0;
  int jumps = 0;
  while (t < t_end && (max_jumps <= 0 || jumps < max_jumps)) {
    model.local_log_ratio_sweep(x, lr);
    double exit_rate = 0.0;
    for (int n = 0; n < n_sites; ++n) {
      for (int j = 0; j < c; ++j) {
        const double r =
            j == x.values[n] ? 0.0 : std::exp(log_g(kind, lr(n, j)));
        rates(n, j) = r;
        exit_rate += r;
      }
    }
    if (!(exit_rate > 0.0)) break;  // absorbing state

    t += rng.exponential(exit_rate);
    if (t > t_end) break;

    // First-jump selection across all (site, value) moves.
    double u = rng.uniform() * exit_rate;
    int site = n_sites - 1, value = -1;
    for (int n = 0; n < n_sites && value < 0; ++n) {
      for (int j = 0; j < c; ++j) {
        if (rates(n, j) <= 0.0) continue;
        u -= rates(n, j);
        if (u < 0.0) {
          site = n;
          value = j;
          break;
        }
      }
    }
    if (value < 0) {
      // Floating-point tail: take the last positive-rate move.
      for (int n = n_sites - 1; n >= 0 && value < 0; --n)
        for (int j = c - 1; j >= 0; --j)
          if (rates(n, j) > 0.0) {
            site = n;
            value = j;
            break;
          }
    }
    x.values[site] = value;
    path.push_back({t, x});
    ++jumps;
  }
  return path;
}

}  // namespace dls
