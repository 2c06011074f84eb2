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

#include "dls/dwgf.hpp"

#include <cmath>

#include "dls/errors.hpp"

namespace dls {

namespace {

constexpr double kProbFloor = 1e-300;

void check_distribution(const Eigen::VectorXd& v, const char* who) {
  if (v.size() == 0) throw ShapeError(std::string(who) + ": empty distribution");
  double total = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!(v[i] >= 0.0) || !std::isfinite(v[i]))
      throw DomainError(std::string(who) + ": probabilities must be finite and >= 0");
    total += v[i];
  }
  if (std::abs(total - 1.0) > 1e-6)
    throw DomainError(std::string(who) + ": probabilities must sum to 1");
}

void check_positive(const Eigen::VectorXd& v, const char* who) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!(v[i] > 0.0) || !std::isfinite(v[i]))
      throw DomainError(std::string(who) + ": probabilities must be strictly positive");
}

}  // namespace

double kl_divergence(const Eigen::VectorXd& rho, const Eigen::VectorXd& pi) {
  if (rho.size() != pi.size()) throw ShapeError("kl_divergence: size mismatch");
  double kl = 0.0;
  for (Eigen::Index i = 0; i < rho.size(); ++i) {
    if (rho[i] <= 0.0) continue;
    if (pi[i] <= 0.0) throw DomainError("kl_divergence: pi must be positive where rho is");
    kl += rho[i] * (std::log(rho[i]) - std::log(pi[i]));
  }
  return kl;
}

double default_dwgf_dt(const Eigen::MatrixXd& q) {
  const double max_exit = q.diagonal().cwiseAbs().maxCoeff();
  if (!(max_exit > 0.0)) return 0.01;
  return std::min(0.01, 0.1 / max_exit);
}

std::vector<FlowRecord> integrate_dwgf(const Eigen::MatrixXd& q,
                                       const Eigen::VectorXd& pi,
                                       const Eigen::VectorXd& rho0, double t_end,
                                       double dt) {
  const Eigen::Index m = q.rows();
  if (q.cols() != m || pi.size() != m || rho0.size() != m)
    throw ShapeError("integrate_dwgf: dimension mismatch");
  if (!(dt > 0.0)) throw DomainError("integrate_dwgf: dt must be positive");
  if (!(t_end >= 0.0)) throw DomainError("integrate_dwgf: t_end must be non-negative");
  check_distribution(rho0, "integrate_dwgf rho0");
  check_positive(pi, "integrate_dwgf pi");

  const Eigen::MatrixXd qt = q.transpose();
  Eigen::VectorXd rho = rho0;
  std::vector<FlowRecord> records;
  records.push_back({0.0, rho, kl_divergence(rho, pi)});

  double t = 0.0;
  while (t < t_end) {
    const double h = std::min(dt, t_end - t);
    const Eigen::VectorXd k1 = qt * rho;
    const Eigen::VectorXd k2 = qt * (rho + 0.5 * h * k1);
    const Eigen::VectorXd k3 = qt * (rho + 0.5 * h * k2);
    const Eigen::VectorXd k4 = qt * (rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;

    // Defensive renormalization: clamp fp dust, reject real violations.
    double total = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (rho[i] < 0.0) {
        if (rho[i] < -1e-9)
          throw StepSizeError("integrate_dwgf: rho went negative; reduce dt");
        rho[i] = 0.0;
      }
      total += rho[i];
    }
    if (std::abs(total - 1.0) > 1e-9)
      throw StepSizeError("integrate_dwgf: probability mass drifted; reduce dt");
    rho /= total;
    records.push_back({t, rho, kl_divergence(rho, pi)});
  }
  return records;
}

Eigen::VectorXd conductance_flow(const Eigen::VectorXd& rho, const Eigen::VectorXd& pi,
                                 const Eigen::VectorXd& energies, WeightKind kind) {
  const Eigen::Index m = rho.size();
  if (pi.size() != m || energies.size() != m)
    throw ShapeError("conductance_flow: size mismatch");
  check_positive(rho, "conductance_flow rho");
  check_positive(pi, "conductance_flow pi");

  Eigen::VectorXd log_rho(m), log_pi(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    log_rho[i] = std::log(std::max(rho[i], kProbFloor));
    log_pi[i] = std::log(std::max(pi[i], kProbFloor));
  }

  Eigen::VectorXd flow = Eigen::VectorXd::Zero(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      // Directed masses m_ij = g(pi_j/pi_i) * rho_i on the complete graph.
      const double log_mij = log_g(kind, log_pi[j] - log_pi[i]) + log_rho[i];
      const double log_mji = log_g(kind, log_pi[i] - log_pi[j]) + log_rho[j];
      // Logarithmic mean (m_ij - m_ji) / (log m_ij - log m_ji), continuous
      // across m_ij = m_ji.
      const double gap = log_mij - log_mji;
      double conductance;
      if (std::abs(gap) < 1e-9)
        conductance = std::exp(log_mij);
      else
        conductance = (std::exp(log_mij) - std::exp(log_mji)) / gap;
      // Potential difference driving mass from i toward j.
      const double drive = (energies[i] + log_rho[i]) - (energies[j] + log_rho[j]);
      flow[j] += conductance * drive;
      flow[i] -= conductance * drive;
    }
  }
  return flow;
}

Eigen::VectorXd master_equation_flow(const Eigen::VectorXd& rho,
                                     const Eigen::VectorXd& pi, WeightKind kind) {
  const Eigen::Index m = rho.size();
  if (pi.size() != m) throw ShapeError("master_equation_flow: size mismatch");
  check_positive(rho, "master_equation_flow rho");
  check_positive(pi, "master_equation_flow pi");

  Eigen::VectorXd log_pi(m);
  for (Eigen::Index i = 0; i < m; ++i) log_pi[i] = std::log(std::max(pi[i], kProbFloor));

  Eigen::VectorXd flow = Eigen::VectorXd::Zero(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      if (j == i) continue;
      // Inflow rho_i * g(pi_j / pi_i) minus outflow rho_j * g(pi_i / pi_j).
      flow[j] += rho[i] * std::exp(log_g(kind, log_pi[j] - log_pi[i])) -
                 rho[j] * std::exp(log_g(kind, log_pi[i] - log_pi[j]));
    }
  }
  return flow;
}

}  // namespace dls
