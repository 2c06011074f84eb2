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

#include "dls/samplers.hpp"

#include <cmath>
#include <limits>

#include "dls/errors.hpp"
#include "dls/transition.hpp"

namespace dls {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void sweep_ratios(const EnergyModel& model, const State& x, RatioSource source,
                  Eigen::MatrixXd& out) {
  if (source == RatioSource::kExact)
    model.local_log_ratio_sweep(x, out);
  else
    model.grad_log_ratios(x, out);
}

// Uniform value different from the current one.
int random_other_value(Rng& rng, int current, int c) {
  int v = static_cast<int>(rng.below(static_cast<std::uint32_t>(c - 1)));
  return v >= current ? v + 1 : v;
}

double step_rwm(Chain& chain, const EnergyModel& model, const SamplerConfig& cfg) {
  const int n_sites = model.dimension();
  const int c = model.n_categories();
  const int flips = std::min(cfg.flips, n_sites);
  State y = chain.x;
  for (int s : chain.rng.distinct(n_sites, flips))
    y.values[s] = random_other_value(chain.rng, y.values[s], c);
  const double log_pi_y = -model.energy(y);
  const double prob = mh_accept_prob(chain.log_pi_x, log_pi_y, 0.0, 0.0);
  if (chain.rng.uniform() < prob) {
    chain.x = std::move(y);
    chain.log_pi_x = log_pi_y;
    ++chain.record.accepted;
  }
  return prob;
}

double step_block_gibbs(Chain& chain, const EnergyModel& model,
                        const SamplerConfig& cfg) {
  const int n_sites = model.dimension();
  const int c = model.n_categories();
  const int block = std::min(cfg.block_size, n_sites);
  double n_configs_fp = 1.0;
  for (int i = 0; i < block; ++i) n_configs_fp *= c;
  if (n_configs_fp > 65536.0)
    throw CapacityError("block_gibbs: block too large to enumerate");
  const int n_configs = static_cast<int>(n_configs_fp);

  const std::vector<int> sites = chain.rng.distinct(n_sites, block);
  State y = chain.x;
  Eigen::VectorXd logits(n_configs);
  for (int cfg_idx = 0; cfg_idx < n_configs; ++cfg_idx) {
    int rem = cfg_idx;
    for (int i = 0; i < block; ++i) {
      y.values[sites[i]] = rem % c;
      rem /= c;
    }
    logits[cfg_idx] = -model.energy(y);
  }
  const int chosen = chain.rng.categorical_logits(logits);
  int rem = chosen;
  for (int i = 0; i < block; ++i) {
    y.values[sites[i]] = rem % c;
    rem /= c;
  }
  chain.x = std::move(y);
  chain.log_pi_x = logits[chosen];
  ++chain.record.accepted;
  return 1.0;
}

double step_hamming_ball(Chain& chain, const EnergyModel& model,
                         const SamplerConfig& cfg) {
  const int n_sites = model.dimension();
  const int c = model.n_categories();
  const int block = std::min(cfg.block_size, n_sites);
  const int ball = 1 + block * (c - 1);

  const std::vector<int> sites = chain.rng.distinct(n_sites, block);

  // Auxiliary center u: uniform over the radius-1 ball around x in the block.
  State u = chain.x;
  const int pick = static_cast<int>(chain.rng.below(static_cast<std::uint32_t>(ball)));
  if (pick > 0) {
    const int site = sites[(pick - 1) / (c - 1)];
    const int offset = (pick - 1) % (c - 1);
    u.values[site] = offset >= u.values[site] ? offset + 1 : offset;
  }

  // Resample x from pi restricted to the ball around u.
  Eigen::VectorXd logits(ball);
  logits[0] = -model.energy(u);
  State y = u;
  for (int i = 0; i < block; ++i) {
    const int site = sites[i];
    const int original = u.values[site];
    for (int offset = 0; offset < c - 1; ++offset) {
      const int value = offset >= original ? offset + 1 : offset;
      y.values[site] = value;
      logits[1 + i * (c - 1) + offset] = -model.energy(y);
    }
    y.values[site] = original;
  }
  const int chosen = chain.rng.categorical_logits(logits);
  if (chosen > 0) {
    const int site = sites[(chosen - 1) / (c - 1)];
    const int offset = (chosen - 1) % (c - 1);
    y.values[site] = offset >= u.values[site] ? offset + 1 : offset;
  }
  chain.x = std::move(y);
  chain.log_pi_x = logits[chosen];
  ++chain.record.accepted;
  return 1.0;
}

double step_gwg(Chain& chain, const EnergyModel& model, const SamplerConfig& cfg) {
  Eigen::MatrixXd lr;
  sweep_ratios(model, chain.x, cfg.ratio_source, lr);
  const int n_sites = model.dimension();
  const int c = model.n_categories();

  Eigen::VectorXd logits(static_cast<Eigen::Index>(n_sites) * c);
  for (int n = 0; n < n_sites; ++n)
    for (int j = 0; j < c; ++j)
      logits[n * c + j] =
          j == chain.x.values[n] ? kNegInf : log_g(cfg.weight, lr(n, j));
  double log_q_xy;
  const int move = chain.rng.categorical_logits(logits, &log_q_xy);
  const int site = move / c, value = move % c;

  State y = chain.x;
  y.values[site] = value;
  const double log_pi_y = cfg.ratio_source == RatioSource::kExact
                              ? chain.log_pi_x + lr(site, value)
                              : -model.energy(y);

  Eigen::MatrixXd lr_y;
  sweep_ratios(model, y, cfg.ratio_source, lr_y);
  Eigen::VectorXd logits_y(static_cast<Eigen::Index>(n_sites) * c);
  for (int n = 0; n < n_sites; ++n)
    for (int j = 0; j < c; ++j)
      logits_y[n * c + j] = j == y.values[n] ? kNegInf : log_g(cfg.weight, lr_y(n, j));
  const double log_q_yx =
      logits_y[site * c + chain.x.values[site]] - log_sum_exp(logits_y);

  const double prob = mh_accept_prob(chain.log_pi_x, log_pi_y, log_q_xy, log_q_yx);
  if (chain.rng.uniform() < prob) {
    chain.x = std::move(y);
    chain.log_pi_x = log_pi_y;
    ++chain.record.accepted;
  }
  return prob;
}

double step_pas(Chain& chain, const EnergyModel& model, const SamplerConfig& cfg) {
  const int n_sites = model.dimension();
  const int c = model.n_categories();
  const int length = cfg.flips;

  State sigma = chain.x;
  Eigen::MatrixXd lr;
  Eigen::VectorXd logits(static_cast<Eigen::Index>(n_sites) * c);
  double log_q_f = 0.0, log_q_r = 0.0, delta_lp = 0.0;
  int prev_site = -1, prev_from = -1;

  // The sweep at sigma^l serves double duty: it scores forward jump l and the
  // reverse of jump l-1 (the reverse path visits sigma^l right after undoing
  // jump l-1, in reverse order). One extra sweep at the endpoint finishes the
  // reverse total, so a length-L path costs L+1 sweeps.
  for (int l = 0; l <= length; ++l) {
    sweep_ratios(model, sigma, cfg.ratio_source, lr);
    for (int n = 0; n < n_sites; ++n)
      for (int j = 0; j < c; ++j)
        logits[n * c + j] =
            j == sigma.values[n] ? kNegInf : log_g(cfg.weight, lr(n, j));
    const double lse = log_sum_exp(logits);
    if (prev_site >= 0) log_q_r += logits[prev_site * c + prev_from] - lse;
    if (l == length) break;

    double lp;
    const int move = chain.rng.categorical_logits(logits, &lp);
    log_q_f += lp;
    const int site = move / c, value = move % c;
    if (cfg.ratio_source == RatioSource::kExact) delta_lp += lr(site, value);
    prev_site = site;
    prev_from = sigma.values[site];
    sigma.values[site] = value;
  }

  const double log_pi_y = cfg.ratio_source == RatioSource::kExact
                              ? chain.log_pi_x + delta_lp
                              : -model.energy(sigma);
  const double prob = mh_accept_prob(chain.log_pi_x, log_pi_y, log_q_f, log_q_r);
  if (chain.rng.uniform() < prob) {
    chain.x = std::move(sigma);
    chain.log_pi_x = log_pi_y;
    ++chain.record.accepted;
  }
  return prob;
}

// Shared skeleton of the factorized one-shot kernels (dmala/dlmcf/dlmc):
// propose every site independently from a per-site row, M-H correct with the
// product proposal densities.
double step_factorized(Chain& chain, const EnergyModel& model,
                       const SamplerConfig& cfg) {
  const int n_sites = model.dimension();

  const auto build_row = [&cfg](const Eigen::VectorXd& lr_row, int current,
                                bool* clamped) -> Eigen::VectorXd {
    switch (cfg.kind) {
      case SamplerKind::kDmala:
        return dmala_row(lr_row, current, cfg.step, cfg.weight);
      case SamplerKind::kDlmcf:
        return euler_row(rate_row(lr_row, current, cfg.weight), current, cfg.step,
                         clamped);
      default:
        return interpolated_row(rate_row(lr_row, current, cfg.weight), lr_row,
                                current, cfg.step);
    }
  };

  Eigen::MatrixXd lr;
  sweep_ratios(model, chain.x, cfg.ratio_source, lr);
  State y = chain.x;
  double log_q_xy = 0.0;
  for (int n = 0; n < n_sites; ++n) {
    bool clamped = false;
    const Eigen::VectorXd row =
        build_row(lr.row(n).transpose(), chain.x.values[n], &clamped);
    if (clamped) ++chain.record.clamp_events;
    const int j = chain.rng.categorical(row);
    log_q_xy += std::log(row[j]);
    y.values[n] = j;
  }

  const double log_pi_y = -model.energy(y);
  Eigen::MatrixXd lr_y;
  sweep_ratios(model, y, cfg.ratio_source, lr_y);
  double log_q_yx = 0.0;
  for (int n = 0; n < n_sites; ++n) {
    const Eigen::VectorXd row = build_row(lr_y.row(n).transpose(), y.values[n], nullptr);
    log_q_yx += std::log(row[chain.x.values[n]]);
  }

  const double prob = mh_accept_prob(chain.log_pi_x, log_pi_y, log_q_xy, log_q_yx);
  if (chain.rng.uniform() < prob) {
    chain.x = std::move(y);
    chain.log_pi_x = log_pi_y;
    ++chain.record.accepted;
  }
  return prob;
}

}  // namespace

Chain make_chain(const EnergyModel& model, std::uint64_t stream_id) {
  Chain chain{State(model.dimension(), model.n_categories()), 0.0, Rng(stream_id),
              stream_id, RunRecord{}};
  for (int n = 0; n < model.dimension(); ++n)
    chain.x.values[n] = static_cast<int>(
        chain.rng.below(static_cast<std::uint32_t>(model.n_categories())));
  chain.log_pi_x = -model.energy(chain.x);
  return chain;
}

double mh_accept_prob(double log_pi_x, double log_pi_y, double log_q_xy,
                      double log_q_yx) {
  if (std::isnan(log_pi_x) || std::isnan(log_pi_y) || std::isnan(log_q_xy) ||
      std::isnan(log_q_yx))
    throw DomainError("mh_accept: NaN input");
  if (std::isinf(log_pi_x) || std::isinf(log_q_xy))
    throw DomainError("mh_accept: current state terms must be finite");
  if (std::isinf(log_pi_y) || std::isinf(log_q_yx)) return 0.0;
  const double log_ratio = (log_pi_y + log_q_yx) - (log_pi_x + log_q_xy);
  return log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
}

bool mh_accept(double log_pi_x, double log_pi_y, double log_q_xy, double log_q_yx,
               Rng& rng) {
  return rng.uniform() < mh_accept_prob(log_pi_x, log_pi_y, log_q_xy, log_q_yx);
}

double step(Chain& chain, const EnergyModel& model, const SamplerConfig& cfg) {
  if (cfg.flips < 1) throw DomainError("step: flips must be at least 1");
  if (cfg.block_size < 1) throw DomainError("step: block_size must be at least 1");
  double prob;
  switch (cfg.kind) {
    case SamplerKind::kRwm:
      prob = step_rwm(chain, model, cfg);
      break;
    case SamplerKind::kBlockGibbs:
      prob = step_block_gibbs(chain, model, cfg);
      break;
    case SamplerKind::kHammingBall:
      prob = step_hamming_ball(chain, model, cfg);
      break;
    case SamplerKind::kGwg:
      prob = step_gwg(chain, model, cfg);
      break;
    case SamplerKind::kPas:
      prob = step_pas(chain, model, cfg);
      break;
    default:
      prob = step_factorized(chain, model, cfg);
      break;
  }
  ++chain.record.steps;
  chain.record.energy_evals += evals_per_step(cfg, model.dimension());
  return prob;
}

long long evals_per_step(const SamplerConfig& cfg, int /*dimension*/) {
  switch (cfg.kind) {
    case SamplerKind::kRwm:
    case SamplerKind::kBlockGibbs:
    case SamplerKind::kHammingBall:
      return 1;
    case SamplerKind::kGwg:
      return cfg.ratio_source == RatioSource::kExact ? 2 : 4;
    case SamplerKind::kPas:
      return cfg.ratio_source == RatioSource::kExact ? cfg.flips + 1 : cfg.flips + 3;
    case SamplerKind::kDmala:
    case SamplerKind::kDlmcf:
    case SamplerKind::kDlmc:
      return 4;
  }
  return 1;
}

double MoveDistribution::prob(int site, int value) const {
  const double logit = logits(site, value);
  return std::isinf(logit) ? 0.0 : std::exp(logit - lse);
}

MoveDistribution single_site_move_distribution(const EnergyModel& model,
                                               const State& x, WeightKind kind,
                                               RatioSource source) {
  Eigen::MatrixXd lr;
  sweep_ratios(model, x, source, lr);
  MoveDistribution dist;
  dist.logits.resize(model.dimension(), model.n_categories());
  for (int n = 0; n < model.dimension(); ++n)
    for (int j = 0; j < model.n_categories(); ++j)
      dist.logits(n, j) = j == x.values[n] ? kNegInf : log_g(kind, lr(n, j));
  dist.lse = log_sum_exp(
      Eigen::Map<const Eigen::VectorXd>(dist.logits.data(), dist.logits.size()));
  return dist;
}

const char* to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::kRwm: return "rwm";
    case SamplerKind::kBlockGibbs: return "block_gibbs";
    case SamplerKind::kHammingBall: return "hamming_ball";
    case SamplerKind::kGwg: return "gwg";
    case SamplerKind::kPas: return "pas";
    case SamplerKind::kDmala: return "dmala";
    case SamplerKind::kDlmcf: return "dlmcf";
    case SamplerKind::kDlmc: return "dlmc";
  }
  return "?";
}

SamplerKind sampler_from_string(const std::string& name) {
  if (name == "rwm") return SamplerKind::kRwm;
  if (name == "block_gibbs") return SamplerKind::kBlockGibbs;
  if (name == "hamming_ball") return SamplerKind::kHammingBall;
  if (name == "gwg") return SamplerKind::kGwg;
  if (name == "pas") return SamplerKind::kPas;
  if (name == "dmala") return SamplerKind::kDmala;
  if (name == "dlmcf") return SamplerKind::kDlmcf;
  if (name == "dlmc") return SamplerKind::kDlmc;
  throw ParseError("unknown sampler kind: " + name);
}

const char* to_string(RatioSource source) {
  return source == RatioSource::kExact ? "exact" : "gradient";
}

RatioSource ratio_source_from_string(const std::string& name) {
  if (name == "exact") return RatioSource::kExact;
  if (name == "gradient") return RatioSource::kGradient;
  throw ParseError("unknown ratio source: " + name);
}

bool has_tunable(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::kRwm:
    case SamplerKind::kPas:
    case SamplerKind::kDmala:
    case SamplerKind::kDlmcf:
    case SamplerKind::kDlmc:
      return true;
    default:
      return false;
  }
}

}  // namespace dls
