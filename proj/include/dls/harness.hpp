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

#ifndef DLS_HARNESS_HPP
#define DLS_HARNESS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dls/params_io.hpp"
#include "dls/samplers.hpp"
#include "dls/tuner.hpp"

namespace dls {

// One sampler entry of an experiment; target_rate < 0 means "use the
// experiment default" (0.234 for rwm, the global target otherwise).
struct SamplerSpec {
  SamplerConfig config;
  double target_rate = -1.0;
};

struct ExperimentConfig {
  // Model source: exactly one of preset / params_path.
  std::string preset;
  std::string params_path;
  PresetOverrides overrides;
  std::uint64_t model_seed = 1;

  std::vector<SamplerSpec> samplers;
  int chains = 10;
  long long steps = 20000;
  long long burn_in = 10000;
  std::uint64_t seed = 0;

  bool tuning_enabled = true;
  double tuning_target = 0.574;
  long long adaptation_steps = 2000;

  int threads = 0;          // 0 = hardware concurrency
  bool measure_time = true; // false pins ess_per_second to 0 for reproducibility
  std::string output;       // base path for <output>.csv / <output>.json
};

// Parses and validates; throws ConfigError listing every violation found.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);

// One CSV row per (sampler, chain).
struct ResultRow {
  std::string model;
  std::string sampler;
  std::string weight;
  double hyperparameter = 0.0;
  int chain = 0;
  double acceptance = 0.0;
  double ess = 0.0;
  double ess_per_eval = 0.0;
  double ess_per_second = 0.0;
  long long energy_evals = 0;
  double tv_to_exact = 0.0;  // NaN when the model is not enumerable
  std::uint64_t seed = 0;    // the chain's derived rng stream
};

struct SamplerOutcome {
  SamplerConfig config;  // configuration the chains actually ran
  double target_rate = 0.0;
  bool tuned = false;
  TuneResult tune;  // meaningful when tuned
};

struct ExperimentResult {
  std::string model_name;
  std::vector<SamplerOutcome> samplers;
  std::vector<ResultRow> rows;  // ordered by (sampler index, chain index)
};

// Tunes (when enabled), runs chains * samplers jobs over a worker pool, and
// writes <output>.csv / <output>.json when an output base is configured.
// Results are byte-identical across reruns and thread counts for a fixed
// config (with measure_time=false).
ExperimentResult run_experiment(const ExperimentConfig& config);

// The stream id sentinel reserved for tuning chains.
inline constexpr std::uint64_t kTunerChainIndex = UINT64_MAX;

std::string results_to_csv(const std::vector<ResultRow>& rows);
nlohmann::json summary_json(const ExperimentConfig& config,
                            const ExperimentResult& result);

// The reported scalar hyperparameter of a sampler configuration.
double hyperparameter_of(const SamplerConfig& config);

// Runs fn(0..n_jobs-1) over `threads` workers (0 = hardware concurrency).
// The first exception thrown by any job is rethrown after all workers stop.
void parallel_for(int n_jobs, int threads, const std::function<void(int)>& fn);

double median(std::vector<double> values);

}  // namespace dls

#endif  // DLS_HARNESS_HPP
