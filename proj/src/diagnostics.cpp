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

#include "dls/diagnostics.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include <unsupported/Eigen/FFT>

#include "dls/errors.hpp"

namespace dls {

Eigen::VectorXd autocovariance(const std::vector<double>& trace) {
  const std::size_t length = trace.size();
  if (length < 2) throw DomainError("autocovariance: trace too short");
  double mean = 0.0;
  for (double v : trace) {
    if (!std::isfinite(v)) throw DomainError("autocovariance: non-finite trace value");
    mean += v;
  }
  mean /= static_cast<double>(length);

  std::size_t padded = 1;
  while (padded < 2 * length) padded <<= 1;
  std::vector<std::complex<double>> time(padded, {0.0, 0.0});
  for (std::size_t t = 0; t < length; ++t) time[t] = trace[t] - mean;

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> freq(padded);
  fft.fwd(freq, time);
  for (auto& f : freq) f = f * std::conj(f);
  fft.inv(time, freq);

  Eigen::VectorXd c(static_cast<Eigen::Index>(length));
  for (std::size_t k = 0; k < length; ++k)
    c[static_cast<Eigen::Index>(k)] = time[k].real() / static_cast<double>(length);
  return c;
}

EssReport effective_sample_size(const std::vector<double>& trace) {
  const auto length = static_cast<double>(trace.size());
  if (trace.size() < 10) throw DomainError("effective_sample_size: trace too short");

  const Eigen::VectorXd c = autocovariance(trace);
  double mean = 0.0;
  for (double v : trace) mean += v;
  mean /= length;

  EssReport report;
  // Numerically constant trace: autocovariance is pure rounding noise.
  if (!(c[0] > 1e-20 * (mean * mean + 1.0))) {
    report.ess = 0.0;
    report.degenerate = true;
    return report;
  }

  // Initial monotone positive sequence over paired autocorrelations.
  double sum = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  Eigen::Index m = 0;
  while (2 * m + 1 < c.size()) {
    double pair = (c[2 * m] + c[2 * m + 1]) / c[0];
    if (pair <= 0.0) break;
    pair = std::min(pair, prev);
    sum += pair;
    prev = pair;
    ++m;
  }
  const double tau = std::max(1.0, 2.0 * sum - 1.0);
  report.ess = length / tau;
  report.cutoff_lag = 2 * m;
  return report;
}

DistributionReport compare_to_exact(const std::vector<std::uint32_t>& samples,
                                    const EnumeratedTarget& target) {
  if (samples.empty()) throw DomainError("compare_to_exact: no samples");
  const auto n_states = target.probs.size();
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(n_states);
  for (std::uint32_t s : samples) {
    if (s >= n_states) throw DomainError("compare_to_exact: sample index out of range");
    counts[s] += 1.0;
  }
  const Eigen::VectorXd empirical = counts / static_cast<double>(samples.size());

  DistributionReport report;
  report.tv = 0.5 * (empirical - target.probs).cwiseAbs().sum();
  for (Eigen::Index s = 0; s < n_states; ++s) {
    if (empirical[s] > 0.0)
      report.kl += empirical[s] * (std::log(empirical[s]) - std::log(target.probs[s]));
  }

  const int n_sites = target.space.dimension;
  const int c = target.space.n_categories;
  Eigen::MatrixXd exact_marginals = Eigen::MatrixXd::Zero(n_sites, c);
  Eigen::MatrixXd empirical_marginals = Eigen::MatrixXd::Zero(n_sites, c);
  State x(n_sites, c);
  for (Eigen::Index s = 0; s < n_states; ++s) {
    target.space.decode_into(static_cast<std::uint64_t>(s), x);
    for (int n = 0; n < n_sites; ++n) {
      exact_marginals(n, x.values[n]) += target.probs[s];
      empirical_marginals(n, x.values[n]) += empirical[s];
    }
  }
  report.max_marginal_error =
      (empirical_marginals - exact_marginals).cwiseAbs().maxCoeff();
  return report;
}

Summary summarize(const RunRecord& record, const EssReport& ess, double seconds) {
  if (record.steps <= 0) throw DomainError("summarize: record has no steps");
  Summary s;
  s.steps = record.steps;
  s.energy_evals = record.energy_evals;
  s.acceptance_rate =
      static_cast<double>(record.accepted) / static_cast<double>(record.steps);
  s.clamp_rate =
      static_cast<double>(record.clamp_events) / static_cast<double>(record.steps);
  s.ess = ess.ess;
  s.degenerate = ess.degenerate;
  s.ess_per_eval =
      record.energy_evals > 0 ? ess.ess / static_cast<double>(record.energy_evals) : 0.0;
  s.ess_per_second = seconds > 0.0 ? ess.ess / seconds : 0.0;
  return s;
}

}  // namespace dls
