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

#include "dls/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include "dls/diagnostics.hpp"
#include "dls/enumeration.hpp"
#include "dls/errors.hpp"

namespace dls {

namespace {

constexpr double kRwmDefaultTarget = 0.234;

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

SamplerSpec sampler_spec_from_json(const nlohmann::json& j, std::size_t index,
                                   std::vector<std::string>& violations) {
  SamplerSpec spec;
  const std::string where = "samplers[" + std::to_string(index) + "]";
  if (!j.is_object()) {
    violations.push_back(where + ": expected an object");
    return spec;
  }
  static const std::vector<std::string> known = {
      "kind", "weight", "ratio_source", "step", "flips", "block_size", "target_rate"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find(known.begin(), known.end(), key) == known.end())
      violations.push_back(where + ": unknown field '" + key + "'");
  }
  try {
    spec.config.kind = sampler_from_string(j.at("kind").get<std::string>());
  } catch (const std::exception& e) {
    violations.push_back(where + ": " + e.what());
  }
  try {
    if (j.contains("weight"))
      spec.config.weight = weight_from_string(j["weight"].get<std::string>());
    if (j.contains("ratio_source"))
      spec.config.ratio_source =
          ratio_source_from_string(j["ratio_source"].get<std::string>());
    if (j.contains("step")) spec.config.step = j["step"].get<double>();
    if (j.contains("flips")) spec.config.flips = j["flips"].get<int>();
    if (j.contains("block_size")) spec.config.block_size = j["block_size"].get<int>();
    if (j.contains("target_rate")) spec.target_rate = j["target_rate"].get<double>();
  } catch (const std::exception& e) {
    violations.push_back(where + ": " + e.what());
  }
  if (!(spec.config.step >= 0.0))
    violations.push_back(where + ": step must be non-negative");
  if (spec.config.flips < 1) violations.push_back(where + ": flips must be >= 1");
  if (spec.config.block_size < 1)
    violations.push_back(where + ": block_size must be >= 1");
  if (spec.target_rate >= 0.0 && !(spec.target_rate > 0.0 && spec.target_rate < 1.0))
    violations.push_back(where + ": target_rate must lie in (0, 1)");
  return spec;
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& j) {
  std::vector<std::string> violations;
  ExperimentConfig cfg;
  if (!j.is_object()) throw ConfigError({"config must be a JSON object"});

  static const std::vector<std::string> known = {
      "model", "samplers", "chains",  "steps",        "burn_in", "seed",
      "tuning", "threads", "measure_time", "output"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find(known.begin(), known.end(), key) == known.end())
      violations.push_back("unknown field '" + key + "'");
  }

  if (!j.contains("model") || !j["model"].is_object()) {
    violations.push_back("missing model object");
  } else {
    const auto& m = j["model"];
    if (m.contains("preset")) cfg.preset = m["preset"].get<std::string>();
    if (m.contains("params_path")) cfg.params_path = m["params_path"].get<std::string>();
    if (m.contains("seed")) cfg.model_seed = m["seed"].get<std::uint64_t>();
    if (m.contains("overrides")) {
      const auto& o = m["overrides"];
      if (o.contains("rows")) cfg.overrides.rows = o["rows"].get<int>();
      if (o.contains("cols")) cfg.overrides.cols = o["cols"].get<int>();
      if (o.contains("n")) cfg.overrides.n = o["n"].get<int>();
      if (o.contains("length")) cfg.overrides.length = o["length"].get<int>();
      if (o.contains("factors")) cfg.overrides.factors = o["factors"].get<int>();
      if (o.contains("hidden")) cfg.overrides.hidden = o["hidden"].get<int>();
    }
    if (cfg.preset.empty() == cfg.params_path.empty())
      violations.push_back("model needs exactly one of preset / params_path");
    if (!cfg.preset.empty()) {
      const auto& names = preset_names();
      if (std::find(names.begin(), names.end(), cfg.preset) == names.end())
        violations.push_back("unknown preset: " + cfg.preset);
    }
  }

  if (!j.contains("samplers") || !j["samplers"].is_array() || j["samplers"].empty()) {
    violations.push_back("samplers must be a non-empty array");
  } else {
    for (std::size_t i = 0; i < j["samplers"].size(); ++i)
      cfg.samplers.push_back(sampler_spec_from_json(j["samplers"][i], i, violations));
  }

  try {
    if (j.contains("chains")) cfg.chains = j["chains"].get<int>();
    if (j.contains("steps")) cfg.steps = j["steps"].get<long long>();
    if (j.contains("burn_in")) cfg.burn_in = j["burn_in"].get<long long>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
    if (j.contains("measure_time")) cfg.measure_time = j["measure_time"].get<bool>();
    if (j.contains("output")) cfg.output = j["output"].get<std::string>();
    if (j.contains("tuning")) {
      const auto& t = j["tuning"];
      if (t.contains("enabled")) cfg.tuning_enabled = t["enabled"].get<bool>();
      if (t.contains("target_rate")) cfg.tuning_target = t["target_rate"].get<double>();
      if (t.contains("adaptation_steps"))
        cfg.adaptation_steps = t["adaptation_steps"].get<long long>();
    }
  } catch (const std::exception& e) {
    violations.push_back(std::string("malformed field: ") + e.what());
  }

  if (cfg.chains < 1) violations.push_back("chains must be >= 1");
  if (cfg.steps < 1) violations.push_back("steps must be >= 1");
  if (cfg.burn_in < 0) violations.push_back("burn_in must be >= 0");
  if (cfg.steps - cfg.burn_in < 10)
    violations.push_back("need at least 10 post-burn-in steps");
  if (!(cfg.tuning_target > 0.0 && cfg.tuning_target < 1.0))
    violations.push_back("tuning.target_rate must lie in (0, 1)");
  if (cfg.adaptation_steps < 1)
    violations.push_back("tuning.adaptation_steps must be >= 1");
  if (cfg.threads < 0) violations.push_back("threads must be >= 0");

  if (!violations.empty()) throw ConfigError(std::move(violations));
  return cfg;
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  nlohmann::json model;
  if (!cfg.preset.empty()) model["preset"] = cfg.preset;
  if (!cfg.params_path.empty()) model["params_path"] = cfg.params_path;
  model["seed"] = cfg.model_seed;
  nlohmann::json overrides;
  if (cfg.overrides.rows > 0) overrides["rows"] = cfg.overrides.rows;
  if (cfg.overrides.cols > 0) overrides["cols"] = cfg.overrides.cols;
  if (cfg.overrides.n > 0) overrides["n"] = cfg.overrides.n;
  if (cfg.overrides.length > 0) overrides["length"] = cfg.overrides.length;
  if (cfg.overrides.factors > 0) overrides["factors"] = cfg.overrides.factors;
  if (cfg.overrides.hidden > 0) overrides["hidden"] = cfg.overrides.hidden;
  if (!overrides.empty()) model["overrides"] = overrides;
  j["model"] = model;

  j["samplers"] = nlohmann::json::array();
  for (const auto& spec : cfg.samplers) {
    nlohmann::json s;
    s["kind"] = to_string(spec.config.kind);
    s["weight"] = to_string(spec.config.weight);
    s["ratio_source"] = to_string(spec.config.ratio_source);
    s["step"] = spec.config.step;
    s["flips"] = spec.config.flips;
    s["block_size"] = spec.config.block_size;
    if (spec.target_rate >= 0.0) s["target_rate"] = spec.target_rate;
    j["samplers"].push_back(std::move(s));
  }
  j["chains"] = cfg.chains;
  j["steps"] = cfg.steps;
  j["burn_in"] = cfg.burn_in;
  j["seed"] = cfg.seed;
  j["tuning"] = {{"enabled", cfg.tuning_enabled},
                 {"target_rate", cfg.tuning_target},
                 {"adaptation_steps", cfg.adaptation_steps}};
  j["threads"] = cfg.threads;
  j["measure_time"] = cfg.measure_time;
  if (!cfg.output.empty()) j["output"] = cfg.output;
  return j;
}

double hyperparameter_of(const SamplerConfig& config) {
  switch (config.kind) {
    case SamplerKind::kRwm:
    case SamplerKind::kPas:
      return static_cast<double>(config.flips);
    case SamplerKind::kBlockGibbs:
    case SamplerKind::kHammingBall:
      return static_cast<double>(config.block_size);
    case SamplerKind::kGwg:
      return 0.0;
    default:
      return config.step;
  }
}

void parallel_for(int n_jobs, int threads, const std::function<void(int)>& fn) {
  if (n_jobs <= 0) return;
  if (threads == 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    threads = hw == 0 ? 1 : static_cast<int>(hw);
  }
  threads = std::min(threads, n_jobs);
  if (threads <= 1) {
    for (int i = 0; i < n_jobs; ++i) fn(i);
    return;
  }

  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n_jobs) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (error) std::rethrow_exception(error);
}

double median(std::vector<double> values) {
  if (values.empty()) throw DomainError("median: empty input");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid]
                                : 0.5 * (values[mid - 1] + values[mid]);
}

std::string results_to_csv(const std::vector<ResultRow>& rows) {
  std::string out =
      "model,sampler,weight,hyperparameter,chain,acceptance,ess,ess_per_eval,"
      "ess_per_second,energy_evals,tv_to_exact,seed\n";
  for (const auto& r : rows) {
    out += r.model + ',' + r.sampler + ',' + r.weight + ',';
    out += format_double(r.hyperparameter) + ',';
    out += std::to_string(r.chain) + ',';
    out += format_double(r.acceptance) + ',';
    out += format_double(r.ess) + ',';
    out += format_double(r.ess_per_eval) + ',';
    out += format_double(r.ess_per_second) + ',';
    out += std::to_string(r.energy_evals) + ',';
    out += format_double(r.tv_to_exact) + ',';
    out += std::to_string(r.seed) + '\n';
  }
  return out;
}

nlohmann::json summary_json(const ExperimentConfig& config,
                            const ExperimentResult& result) {
  nlohmann::json j;
  j["config"] = config_to_json(config);
  j["model"] = result.model_name;
  j["samplers"] = nlohmann::json::array();
  for (std::size_t s = 0; s < result.samplers.size(); ++s) {
    const auto& outcome = result.samplers[s];
    nlohmann::json entry;
    entry["kind"] = to_string(outcome.config.kind);
    entry["weight"] = to_string(outcome.config.weight);
    entry["ratio_source"] = to_string(outcome.config.ratio_source);
    entry["hyperparameter"] = hyperparameter_of(outcome.config);
    entry["tuned"] = outcome.tuned;
    if (outcome.tuned) {
      entry["tuning"] = {{"target_rate", outcome.target_rate},
                         {"trailing_acceptance", outcome.tune.trailing_acceptance},
                         {"converged", outcome.tune.converged},
                         {"saturated", outcome.tune.saturated}};
    }
    // Rows are laid out (sampler index) * chains + (chain index).
    const std::size_t chains = result.rows.size() / result.samplers.size();
    std::vector<double> ess, ess_per_eval, acceptance, tv;
    for (std::size_t c = 0; c < chains; ++c) {
      const auto& row = result.rows[s * chains + c];
      ess.push_back(row.ess);
      ess_per_eval.push_back(row.ess_per_eval);
      acceptance.push_back(row.acceptance);
      if (!std::isnan(row.tv_to_exact)) tv.push_back(row.tv_to_exact);
    }
    if (!ess.empty()) {
      entry["median_ess"] = median(ess);
      entry["median_ess_per_eval"] = median(ess_per_eval);
      entry["median_acceptance"] = median(acceptance);
      if (!tv.empty()) entry["median_tv_to_exact"] = median(tv);
    }
    j["samplers"].push_back(std::move(entry));
  }
  return j;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const ModelParams params =
      !config.preset.empty()
          ? generate_preset(config.preset, config.model_seed, config.overrides)
          : load_params(config.params_path);
  const std::shared_ptr<const EnergyModel> model = make_model(params);

  ExperimentResult result;
  result.model_name = !config.preset.empty() ? config.preset : family_of(params);

  std::optional<EnumeratedTarget> target;
  if (model->enumerable()) target = enumerate_distribution(*model);

  // Tune sequentially first; every chain of a sampler runs its tuned config.
  const auto n_samplers = config.samplers.size();
  result.samplers.resize(n_samplers);
  for (std::size_t s = 0; s < n_samplers; ++s) {
    const SamplerSpec& spec = config.samplers[s];
    SamplerOutcome& outcome = result.samplers[s];
    outcome.config = spec.config;
    outcome.target_rate =
        spec.target_rate >= 0.0
            ? spec.target_rate
            : (spec.config.kind == SamplerKind::kRwm ? kRwmDefaultTarget
                                                     : config.tuning_target);
    if (config.tuning_enabled && has_tunable(spec.config.kind)) {
      Rng tuner_rng(derive_stream(config.seed, s, kTunerChainIndex));
      outcome.tune = tune(spec.config, *model, outcome.target_rate,
                          config.adaptation_steps, std::move(tuner_rng));
      outcome.config = outcome.tune.config;
      outcome.tuned = true;
    }
  }

  const int n_jobs = static_cast<int>(n_samplers) * config.chains;
  result.rows.resize(static_cast<std::size_t>(n_jobs));
  parallel_for(n_jobs, config.threads, [&](int job) {
    const auto s = static_cast<std::size_t>(job / config.chains);
    const int c = job % config.chains;
    const SamplerConfig& run_cfg = result.samplers[s].config;

    const std::uint64_t stream =
        derive_stream(config.seed, s, static_cast<std::uint64_t>(c));
    Chain chain = make_chain(*model, stream);
    chain.record.trace.reserve(static_cast<std::size_t>(config.steps - config.burn_in));
    std::vector<std::uint32_t> visited;
    if (target)
      visited.reserve(static_cast<std::size_t>(config.steps - config.burn_in));

    const auto t0 = std::chrono::steady_clock::now();
    for (long long k = 0; k < config.steps; ++k) {
      step(chain, *model, run_cfg);
      if (k >= config.burn_in) {
        chain.record.trace.push_back(-chain.log_pi_x);
        if (target)
          visited.push_back(
              static_cast<std::uint32_t>(target->space.encode(chain.x)));
      }
    }
    const double seconds =
        config.measure_time
            ? std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                  .count()
            : 0.0;

    const EssReport ess = effective_sample_size(chain.record.trace);
    const Summary summary = summarize(chain.record, ess, seconds);

    ResultRow& row = result.rows[static_cast<std::size_t>(job)];
    row.model = result.model_name;
    row.sampler = to_string(run_cfg.kind);
    row.weight = to_string(run_cfg.weight);
    row.hyperparameter = hyperparameter_of(run_cfg);
    row.chain = c;
    row.acceptance = summary.acceptance_rate;
    row.ess = summary.ess;
    row.ess_per_eval = summary.ess_per_eval;
    row.ess_per_second = summary.ess_per_second;
    row.energy_evals = summary.energy_evals;
    row.tv_to_exact = target ? compare_to_exact(visited, *target).tv
                             : std::numeric_limits<double>::quiet_NaN();
    row.seed = stream;
  });

  if (!config.output.empty()) {
    std::ofstream csv(config.output + ".csv", std::ios::binary);
    if (!csv) throw ParseError("cannot open for writing: " + config.output + ".csv");
    csv << results_to_csv(result.rows);
    std::ofstream js(config.output + ".json", std::ios::binary);
    if (!js) throw ParseError("cannot open for writing: " + config.output + ".json");
    js << summary_json(config, result).dump(2) << '\n';
  }
  return result;
}

}  // namespace dls
