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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dls/checks.hpp"
#include "dls/errors.hpp"
#include "dls/harness.hpp"
#include "dls/params_io.hpp"
#include "dls/tuner.hpp"

namespace {

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw dls::ParseError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw dls::ParseError(path + ": " + e.what());
  }
  return j;
}

void emit(const nlohmann::json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw dls::ParseError("cannot write " + out_path);
  out << j.dump(2) << '\n';
  std::cout << "wrote " << out_path << '\n';
}

// The standard benchmark line-up: baselines plus every gradient-flow kernel,
// all tunable kernels adapted toward their target rates.
nlohmann::json benchmark_samplers() {
  auto entry = [](const char* kind, const nlohmann::json& extra) {
    nlohmann::json s{{"kind", kind}};
    if (extra.is_object()) s.update(extra);  // {} parses as null, not {}
    return s;
  };
  return nlohmann::json::array({
      entry("rwm", {}),
      entry("block_gibbs", {{"block_size", 2}}),
      entry("hamming_ball", {{"block_size", 2}}),
      entry("gwg", {}),
      entry("pas", {{"flips", 3}}),
      entry("dmala", {{"step", 0.5}}),
      entry("dlmcf", {{"step", 0.1}}),
      entry("dlmc", {{"step", 1.0}}),
  });
}

int cmd_run(const std::string& config_path, bool has_seed, std::uint64_t seed,
            const std::string& out_override, int threads_override) {
  nlohmann::json j = read_json_file(config_path);
  if (has_seed) j["seed"] = seed;
  if (!out_override.empty()) j["output"] = out_override;
  if (threads_override >= 0) j["threads"] = threads_override;
  dls::ExperimentConfig config = dls::config_from_json(j);

  dls::ExperimentResult result = dls::run_experiment(config);
  nlohmann::json summary = dls::summary_json(config, result);

  std::printf("model: %s   chains: %d   steps: %lld (burn-in %lld)\n",
              result.model_name.c_str(), config.chains,
              static_cast<long long>(config.steps),
              static_cast<long long>(config.burn_in));
  std::printf("%-14s %-7s %12s %10s %14s %10s\n", "sampler", "weight", "hyperparam",
              "accept", "ess/eval", "tv");
  for (const auto& s : summary["samplers"]) {
    const double tv = s.contains("median_tv_to_exact")
                          ? s["median_tv_to_exact"].get<double>()
                          : std::nan("");
    std::printf("%-14s %-7s %12.5g %10.3f %14.3g %10s\n",
                s["kind"].get<std::string>().c_str(),
                s["weight"].get<std::string>().c_str(),
                s["hyperparameter"].get<double>(),
                s["median_acceptance"].get<double>(),
                s["median_ess_per_eval"].get<double>(),
                std::isnan(tv) ? "-" : std::to_string(tv).c_str());
  }
  if (!config.output.empty())
    std::printf("results: %s.csv, %s.json\n", config.output.c_str(),
                config.output.c_str());
  return 0;
}

int cmd_validate(const dls::ValidationOptions& options, const std::string& json_out) {
  std::vector<dls::CheckResult> checks = dls::run_validation_checks(options);
  for (const auto& c : checks) {
    std::printf("[%s] %-34s observed %.3g (tol %.3g) %6.2fs  %s\n",
                c.pass ? "PASS" : "FAIL", c.name.c_str(), c.observed, c.tolerance,
                c.seconds, c.note.c_str());
  }
  const bool ok = dls::all_passed(checks);
  std::printf("%s: %zu checks\n", ok ? "OK" : "FAILED", checks.size());
  if (!json_out.empty()) emit(dls::checks_to_json(checks), json_out);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Locally balanced discrete-space samplers and their exact checks"};
  app.require_subcommand(1);

  // run ---------------------------------------------------------------
  auto* run = app.add_subcommand("run", "Run a sampling experiment from a config file");
  std::string run_config, run_out;
  std::uint64_t run_seed = 0;
  int run_threads = -1;
  run->add_option("--config", run_config, "Experiment config JSON")
      ->required()
      ->check(CLI::ExistingFile);
  auto* run_seed_opt = run->add_option("--seed", run_seed, "Override the run seed");
  run->add_option("--out", run_out, "Override the output base path");
  run->add_option("--threads", run_threads, "Override the worker count (0 = all cores)");

  // validate ------------------------------------------------------------
  auto* validate = app.add_subcommand("validate", "Run the built-in self checks");
  dls::ValidationOptions val_options;
  std::string val_json;
  validate->add_flag("--quick", val_options.quick, "Skip the long chain-exactness suite");
  validate->add_option("--threads", val_options.threads,
                       "Worker count for the long checks (0 = all cores)");
  validate->add_option("--json", val_json, "Also write the report as JSON");
  validate
      ->add_flag("--corrupt-interpolated-row", val_options.corrupt_interpolated_row,
                 "Deliberately break the interpolated rows (the checks must fail)")
      ->group("");

  // tune ----------------------------------------------------------------
  auto* tune_cmd = app.add_subcommand("tune", "Adapt one sampler's hyperparameter");
  std::string tune_preset, tune_params, tune_sampler = "dlmc", tune_weight = "sqrt";
  double tune_target = 0.574;
  long long tune_steps = 2000;
  std::uint64_t tune_seed = 0, tune_model_seed = 1;
  tune_cmd->add_option("--preset", tune_preset, "Model preset name");
  tune_cmd->add_option("--params", tune_params, "Model parameter JSON")
      ->check(CLI::ExistingFile);
  tune_cmd->add_option("--sampler", tune_sampler, "rwm, pas, dmala, dlmcf or dlmc");
  tune_cmd->add_option("--weight", tune_weight, "sqrt or barker");
  tune_cmd->add_option("--target", tune_target, "Target acceptance rate")->capture_default_str();
  tune_cmd->add_option("--steps", tune_steps, "Adaptation steps")->capture_default_str();
  tune_cmd->add_option("--seed", tune_seed, "Rng seed")->capture_default_str();
  tune_cmd->add_option("--model-seed", tune_model_seed, "Preset generation seed")->capture_default_str();

  // preset --------------------------------------------------------------
  auto* preset_cmd =
      app.add_subcommand("preset", "Emit a ready-to-run benchmark config");
  std::string preset_name, preset_out;
  std::uint64_t preset_seed = 1;
  bool preset_list = false, paper_scale = false;
  preset_cmd->add_option("--name", preset_name, "Preset name");
  preset_cmd->add_flag("--list", preset_list, "List preset names");
  preset_cmd->add_option("--seed", preset_seed, "Model generation seed")->capture_default_str();
  preset_cmd->add_flag("--paper-scale", paper_scale,
                       "Full-size benchmark (100 chains, 100k steps)");
  preset_cmd->add_option("--out", preset_out, "Write the config here (default stdout)");

  // gen-params ------------------------------------------------------------
  auto* gen = app.add_subcommand("gen-params", "Generate and save model parameters");
  std::string gen_preset, gen_out;
  std::uint64_t gen_seed = 1;
  dls::PresetOverrides gen_over;
  gen->add_option("--preset", gen_preset, "Preset name")->required();
  gen->add_option("--seed", gen_seed, "Generation seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output parameter JSON")->required();
  gen->add_option("--rows", gen_over.rows, "Lattice rows override");
  gen->add_option("--cols", gen_over.cols, "Lattice cols override");
  gen->add_option("--n", gen_over.n, "Site count override");
  gen->add_option("--length", gen_over.length, "Chain length override");
  gen->add_option("--factors", gen_over.factors, "Factor count override");
  gen->add_option("--hidden", gen_over.hidden, "Hidden unit count override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed())
      return cmd_run(run_config, run_seed_opt->count() > 0, run_seed, run_out,
                     run_threads);

    if (validate->parsed()) return cmd_validate(val_options, val_json);

    if (tune_cmd->parsed()) {
      if (tune_preset.empty() == tune_params.empty())
        throw dls::ConfigError({"tune needs exactly one of --preset / --params"});
      dls::ModelParams params =
          !tune_preset.empty()
              ? dls::generate_preset(tune_preset, tune_model_seed)
              : dls::load_params(tune_params);
      auto model = dls::make_model(params);
      dls::SamplerConfig config;
      config.kind = dls::sampler_from_string(tune_sampler);
      config.weight = dls::weight_from_string(tune_weight);
      dls::Rng rng(dls::derive_stream(tune_seed, 0, dls::kTunerChainIndex));
      dls::TuneResult result = dls::tune(config, *model, tune_target, tune_steps, rng);
      nlohmann::json j{{"sampler", dls::to_string(config.kind)},
                       {"weight", dls::to_string(config.weight)},
                       {"hyperparameter", dls::hyperparameter_of(result.config)},
                       {"trailing_acceptance", result.trailing_acceptance},
                       {"converged", result.converged},
                       {"saturated", result.saturated}};
      std::cout << j.dump(2) << '\n';
      return 0;
    }

    if (preset_cmd->parsed()) {
      if (preset_list) {
        for (const auto& name : dls::preset_names()) std::cout << name << '\n';
        return 0;
      }
      if (preset_name.empty())
        throw dls::ConfigError({"preset needs --name (or --list)"});
      // Fail early on unknown names / bad shapes by generating once.
      dls::generate_preset(preset_name, preset_seed);
      nlohmann::json config{
          {"model", {{"preset", preset_name}, {"seed", preset_seed}}},
          {"samplers", benchmark_samplers()},
          {"chains", paper_scale ? 100 : 10},
          {"steps", paper_scale ? 100000 : 20000},
          {"burn_in", paper_scale ? 50000 : 10000},
          {"seed", 0},
          {"tuning",
           {{"enabled", true}, {"target_rate", 0.574}, {"adaptation_steps", 2000}}},
          {"measure_time", true},
          {"output", "results/" + preset_name}};
      emit(config, preset_out);
      return 0;
    }

    if (gen->parsed()) {
      dls::ModelParams params = dls::generate_preset(gen_preset, gen_seed, gen_over);
      dls::save_params(gen_out, params);
      std::cout << "wrote " << gen_out << " (" << dls::family_of(params) << ")\n";
      return 0;
    }
  } catch (const dls::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const dls::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
