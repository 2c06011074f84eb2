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

#ifndef DLS_PARAMS_IO_HPP
#define DLS_PARAMS_IO_HPP

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dls/models/bernoulli.hpp"
#include "dls/models/fhmm.hpp"
#include "dls/models/ising.hpp"
#include "dls/models/rbm.hpp"
#include "dls/rng.hpp"

namespace dls {

using ModelParams = std::variant<BernoulliParams, IsingParams, FhmmParams, RbmParams>;

std::shared_ptr<const EnergyModel> make_model(const ModelParams& params);
const char* family_of(const ModelParams& params);

// JSON round-trip. Numbers survive bit-exactly (shortest-round-trip encoding).
nlohmann::json params_to_json(const ModelParams& params);
ModelParams params_from_json(const nlohmann::json& j);
void save_params(const std::string& path, const ModelParams& params);
ModelParams load_params(const std::string& path);

// Random-parameter generators. Each consumes the Rng sequentially, so a fixed
// seed pins the full parameter set.
BernoulliParams generate_bernoulli(int n, int c, double sigma2, Rng& rng);
// Binary lattice; per-site scalar field uniform over [out_lo, out_hi] on the
// border region and [in_lo, in_hi] on the centered inner square (margin
// ceil(side/4) per dimension).
IsingParams generate_ising(int rows, int cols, double lambda, double out_lo,
                           double out_hi, double in_lo, double in_hi, Rng& rng);
// Potts lattice; theta(n, i) ~ U(-1.5, 1.5) - 0.5*i/C outside, + 0.5*i/C
// inside (i = 1..C).
IsingParams generate_potts(int rows, int cols, int c, double lambda, Rng& rng);
// Weights N(0,1), bias 0; observations drawn from the model itself.
FhmmParams generate_fhmm(int length, int factors, double sigma, Rng& rng);
RbmParams generate_rbm(int n, int c, int m, Rng& rng);

// Samples hidden chains from the prior, then y_l ~ N(<W, x_l> + b, sigma^2).
Eigen::VectorXd fhmm_sample_observations(const FhmmParams& params, Rng& rng);

// Named parameter regimes matching the benchmark suite. Shape fields can be
// overridden (-1 keeps the regime default) to scale models down.
struct PresetOverrides {
  int rows = -1, cols = -1;
  int n = -1;
  int length = -1, factors = -1;
  int hidden = -1;
};

ModelParams generate_preset(const std::string& name, std::uint64_t seed,
                            const PresetOverrides& overrides = {});
const std::vector<std::string>& preset_names();

}  // namespace dls

#endif  // DLS_PARAMS_IO_HPP
