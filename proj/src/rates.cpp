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

#include "dls/rates.hpp"

#include <cmath>

#include "dls/errors.hpp"

namespace dls {

RateRow rate_row(const Eigen::VectorXd& log_ratios, int current, WeightKind kind) {
  const Eigen::Index c = log_ratios.size();
  if (current < 0 || current >= c) throw ShapeError("rate_row: current out of range");
  RateRow row;
  row.site = current;
  row.rates.resize(c);
  double total = 0.0;
  for (Eigen::Index j = 0; j < c; ++j) {
    if (j == current) continue;
    const double r = std::exp(log_g(kind, log_ratios[j]));
    row.rates[j] = r;
    total += r;
  }
  row.rates[current] = -total;
  return row;
}

RateRow rate_row(const EnergyModel& model, const State& x, int site, WeightKind kind) {
  RateRow row = rate_row(model.local_log_ratios(x, site).log_ratios, x.values[site], kind);
  row.site = site;
  return row;
}

FullRateMatrix full_rate_matrix(const EnergyModel& model, WeightKind kind,
                                int max_bits) {
  if (!model.enumerable(max_bits))
    throw CapacityError("state space exceeds enumeration capacity");
  FullRateMatrix out;
  out.space = {model.dimension(), model.n_categories()};
  const auto size = static_cast<Eigen::Index>(out.space.size());
  out.q = Eigen::MatrixXd::Zero(size, size);

  const int n_sites = model.dimension();
  const int c = model.n_categories();
  State x(n_sites, c);
  Eigen::MatrixXd lr;
  for (Eigen::Index s = 0; s < size; ++s) {
    out.space.decode_into(static_cast<std::uint64_t>(s), x);
    model.local_log_ratio_sweep(x, lr);
    std::int64_t stride = 1;
    double diag = 0.0;
    for (int n = 0; n < n_sites; ++n) {
      for (int j = 0; j < c; ++j) {
        if (j != x.values[n]) {
          const auto t = static_cast<Eigen::Index>(s + stride * (j - x.values[n]));
          const double r = std::exp(log_g(kind, lr(n, j)));
          out.q(s, t) = r;
          diag -= r;
        }
      }
      stride *= c;
    }
    out.q(s, s) = diag;
  }
  return out;
}

}  // namespace dls
