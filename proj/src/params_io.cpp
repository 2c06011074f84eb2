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

#include "dls/params_io.hpp"

#include <cmath>
#include <fstream>

#include "dls/errors.hpp"

namespace dls {

namespace {

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw ParseError("expected a non-empty array of arrays");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j[r].size()) != cols)
      throw ParseError("ragged matrix rows");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
  }
  return m;
}

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("expected an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = j[i].get<double>();
  return v;
}

// Uniform field on [lo_out, hi_out], switching to [lo_in, hi_in] on the
// centered inner block with margin ceil(side/4) per dimension.
bool in_inner_region(int r, int c, int rows, int cols) {
  const int mr = (rows + 3) / 4;
  const int mc = (cols + 3) / 4;
  return r >= mr && r < rows - mr && c >= mc && c < cols - mc;
}

}  // namespace

std::shared_ptr<const EnergyModel> make_model(const ModelParams& params) {
  return std::visit(
      [](const auto& p) -> std::shared_ptr<const EnergyModel> {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BernoulliParams>)
          return std::make_shared<BernoulliModel>(p);
        else if constexpr (std::is_same_v<T, IsingParams>)
          return std::make_shared<IsingModel>(p);
        else if constexpr (std::is_same_v<T, FhmmParams>)
          return std::make_shared<FhmmModel>(p);
        else
          return std::make_shared<RbmModel>(p);
      },
      params);
}

const char* family_of(const ModelParams& params) {
  return std::visit([](const auto& p) -> const char* {
    using T = std::decay_t<decltype(p)>;
    if constexpr (std::is_same_v<T, BernoulliParams>) return "bernoulli";
    else if constexpr (std::is_same_v<T, IsingParams>) return "ising";
    else if constexpr (std::is_same_v<T, FhmmParams>) return "fhmm";
    else return "rbm";
  }, params);
}

nlohmann::json params_to_json(const ModelParams& params) {
  nlohmann::json j;
  j["family"] = family_of(params);
  if (const auto* p = std::get_if<BernoulliParams>(&params)) {
    j["theta"] = matrix_to_json(p->theta);
  } else if (const auto* p = std::get_if<IsingParams>(&params)) {
    j["rows"] = p->rows;
    j["cols"] = p->cols;
    j["lambda"] = p->lambda;
    j["theta"] = matrix_to_json(p->theta);
  } else if (const auto* p = std::get_if<FhmmParams>(&params)) {
    j["length"] = p->length;
    j["factors"] = p->factors;
    j["weights"] = vector_to_json(p->weights);
    j["bias"] = p->bias;
    j["sigma"] = p->sigma;
    j["p1_init"] = p->p1_init;
    j["p_stay"] = p->p_stay;
    j["observations"] = vector_to_json(p->observations);
  } else if (const auto* p = std::get_if<RbmParams>(&params)) {
    j["theta_v"] = matrix_to_json(p->theta_v);
    j["hidden_bias"] = vector_to_json(p->hidden_bias);
    j["weights"] = matrix_to_json(p->weights);
  }
  return j;
}

ModelParams params_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("family"))
    throw ParseError("model params: missing family field");
  const std::string family = j.at("family").get<std::string>();
  try {
    if (family == "bernoulli") {
      return BernoulliParams{matrix_from_json(j.at("theta"))};
    }
    if (family == "ising") {
      IsingParams p;
      p.rows = j.at("rows").get<int>();
      p.cols = j.at("cols").get<int>();
      p.lambda = j.at("lambda").get<double>();
      p.theta = matrix_from_json(j.at("theta"));
      return p;
    }
    if (family == "fhmm") {
      FhmmParams p;
      p.length = j.at("length").get<int>();
      p.factors = j.at("factors").get<int>();
      p.weights = vector_from_json(j.at("weights"));
      p.bias = j.at("bias").get<double>();
      p.sigma = j.at("sigma").get<double>();
      p.p1_init = j.at("p1_init").get<double>();
      p.p_stay = j.at("p_stay").get<double>();
      p.observations = vector_from_json(j.at("observations"));
      return p;
    }
    if (family == "rbm") {
      RbmParams p;
      p.theta_v = matrix_from_json(j.at("theta_v"));
      p.hidden_bias = vector_from_json(j.at("hidden_bias"));
      p.weights = matrix_from_json(j.at("weights"));
      return p;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model params: ") + e.what());
  }
  throw ParseError("unknown model family: " + family);
}

void save_params(const std::string& path, const ModelParams& params) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open for writing: " + path);
  out << params_to_json(params).dump(2) << '\n';
}

ModelParams load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("cannot parse ") + path + ": " + e.what());
  }
  return params_from_json(j);
}

BernoulliParams generate_bernoulli(int n, int c, double sigma2, Rng& rng) {
  if (n < 1 || c < 2) throw ShapeError("generate_bernoulli: bad shape");
  if (!(sigma2 > 0.0)) throw DomainError("generate_bernoulli: sigma2 must be positive");
  const double sd = std::sqrt(sigma2);
  BernoulliParams p;
  p.theta.resize(n, c);
  if (c == 2) {
    // Binary convention: one scalar field per site.
    for (int i = 0; i < n; ++i) {
      p.theta(i, 0) = 0.0;
      p.theta(i, 1) = sd * rng.normal();
    }
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < c; ++j) p.theta(i, j) = sd * rng.normal();
  }
  return p;
}

IsingParams generate_ising(int rows, int cols, double lambda, double out_lo,
                           double out_hi, double in_lo, double in_hi, Rng& rng) {
  if (rows < 1 || cols < 1) throw ShapeError("generate_ising: bad lattice shape");
  IsingParams p;
  p.rows = rows;
  p.cols = cols;
  p.lambda = lambda;
  p.theta.resize(rows * cols, 2);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const bool inner = in_inner_region(r, c, rows, cols);
      const double lo = inner ? in_lo : out_lo;
      const double hi = inner ? in_hi : out_hi;
      const int n = r * cols + c;
      p.theta(n, 0) = 0.0;
      p.theta(n, 1) = lo + (hi - lo) * rng.uniform();
    }
  }
  return p;
}

IsingParams generate_potts(int rows, int cols, int c, double lambda, Rng& rng) {
  if (rows < 1 || cols < 1 || c < 2) throw ShapeError("generate_potts: bad shape");
  IsingParams p;
  p.rows = rows;
  p.cols = cols;
  p.lambda = lambda;
  p.theta.resize(rows * cols, c);
  for (int r = 0; r < rows; ++r) {
    for (int cc = 0; cc < cols; ++cc) {
      const double sign = in_inner_region(r, cc, rows, cols) ? 1.0 : -1.0;
      const int n = r * cols + cc;
      for (int i = 1; i <= c; ++i)
        p.theta(n, i - 1) =
            -1.5 + 3.0 * rng.uniform() + sign * 0.5 * static_cast<double>(i) / c;
    }
  }
  return p;
}

Eigen::VectorXd fhmm_sample_observations(const FhmmParams& params, Rng& rng) {
  const int L = params.length, K = params.factors;
  Eigen::VectorXd y(L);
  std::vector<int> x(static_cast<std::size_t>(K));
  for (int l = 0; l < L; ++l) {
    for (int k = 0; k < K; ++k) {
      if (l == 0) {
        x[k] = rng.uniform() < params.p1_init ? 1 : 0;
      } else if (rng.uniform() >= params.p_stay) {
        x[k] = 1 - x[k];
      }
    }
    double mean = params.bias;
    for (int k = 0; k < K; ++k)
      if (x[k] == 1) mean += params.weights[k];
    y[l] = mean + params.sigma * rng.normal();
  }
  return y;
}

FhmmParams generate_fhmm(int length, int factors, double sigma, Rng& rng) {
  if (length < 1 || factors < 1) throw ShapeError("generate_fhmm: bad shape");
  FhmmParams p;
  p.length = length;
  p.factors = factors;
  p.sigma = sigma;
  p.bias = 0.0;
  p.p1_init = 0.1;
  p.p_stay = 0.8;
  p.weights.resize(factors);
  for (int k = 0; k < factors; ++k) p.weights[k] = rng.normal();
  p.observations = fhmm_sample_observations(p, rng);
  return p;
}

RbmParams generate_rbm(int n, int c, int m, Rng& rng) {
  if (n < 1 || c < 2 || m < 1) throw ShapeError("generate_rbm: bad shape");
  RbmParams p;
  p.theta_v.resize(n, c);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < c; ++j) p.theta_v(i, j) = 0.1 * rng.normal();
  p.hidden_bias.resize(m);
  for (int i = 0; i < m; ++i) p.hidden_bias[i] = 0.1 * rng.normal();
  p.weights.resize(m, static_cast<Eigen::Index>(n) * c);
  for (Eigen::Index i = 0; i < p.weights.rows(); ++i)
    for (Eigen::Index j = 0; j < p.weights.cols(); ++j)
      p.weights(i, j) = 0.2 * rng.normal();
  return p;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "bernoulli-high", "bernoulli-low", "bernoulli-c4", "bernoulli-c8",
      "ising-high",     "ising-low",     "potts-c4",     "potts-c8",
      "fhmm-high",      "fhmm-low",      "rbm-high",     "rbm-low",
      "rbm-c4",
  };
  return names;
}

ModelParams generate_preset(const std::string& name, std::uint64_t seed,
                            const PresetOverrides& o) {
  Rng rng(derive_stream(seed, 0x70726573, 0));  // generator stream tag
  const int rows = o.rows > 0 ? o.rows : -1;
  const int cols = o.cols > 0 ? o.cols : -1;

  if (name == "bernoulli-high")
    return generate_bernoulli(o.n > 0 ? o.n : 10000, 2, 0.125, rng);
  if (name == "bernoulli-low")
    return generate_bernoulli(o.n > 0 ? o.n : 10000, 2, 12.5, rng);
  if (name == "bernoulli-c4")
    return generate_bernoulli(o.n > 0 ? o.n : 2000, 4, 1.125, rng);
  if (name == "bernoulli-c8")
    return generate_bernoulli(o.n > 0 ? o.n : 2000, 8, 1.125, rng);
  if (name == "ising-high")
    return generate_ising(rows > 0 ? rows : 50, cols > 0 ? cols : 50, 0.5,
                          -2.0, 1.0, -1.0, 2.0, rng);
  if (name == "ising-low")
    return generate_ising(rows > 0 ? rows : 50, cols > 0 ? cols : 50, 1.0,
                          -4.0, 2.0, -2.0, 4.0, rng);
  if (name == "potts-c4")
    return generate_potts(rows > 0 ? rows : 30, cols > 0 ? cols : 30, 4, 1.0, rng);
  if (name == "potts-c8")
    return generate_potts(rows > 0 ? rows : 30, cols > 0 ? cols : 30, 8, 1.0, rng);
  if (name == "fhmm-high")
    return generate_fhmm(o.length > 0 ? o.length : 200,
                         o.factors > 0 ? o.factors : 10, 2.0, rng);
  if (name == "fhmm-low")
    return generate_fhmm(o.length > 0 ? o.length : 100,
                         o.factors > 0 ? o.factors : 20, 2.0, rng);
  if (name == "rbm-high")
    return generate_rbm(o.n > 0 ? o.n : 784, 2, o.hidden > 0 ? o.hidden : 25, rng);
  if (name == "rbm-low")
    return generate_rbm(o.n > 0 ? o.n : 784, 2, o.hidden > 0 ? o.hidden : 200, rng);
  if (name == "rbm-c4")
    return generate_rbm(o.n > 0 ? o.n : 784, 4, o.hidden > 0 ? o.hidden : 100, rng);
  throw ParseError("unknown preset: " + name);
}

}  // namespace dls
