// Copyright 2026 The pepcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Independent reference computations for the tests: plain double-precision
// simulators of each method on diagonal quadratics, read straight from a
// config document without going through the library.

#pragma once

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <limits>
#include <random>
#include <string>
#include <vector>

namespace oracle {

/// f(x) = 1/2 sum_i h_i (x_i - x*_i)^2 + f*.
struct Quadratic {
  Eigen::VectorXd h;
  Eigen::VectorXd xstar;
  double fstar = 0.0;

  double f(const Eigen::VectorXd& x) const;
  Eigen::VectorXd grad(const Eigen::VectorXd& x) const;
};

/// Spectrum drawn uniformly in [mu, L]; with `pin_endpoints` the first two
/// eigenvalues are mu and L.
Quadratic random_quadratic(std::mt19937_64& rng, int dim, double mu, double L, bool pin_endpoints);
Eigen::VectorXd random_point(std::mt19937_64& rng, int dim);

struct Problem {
  double mu = 0.0;
  double L = std::numeric_limits<double>::infinity();
  std::string method;
  double method_L = 0.0;
  double step = 0.0;
  std::vector<std::vector<double>> table;
  int T = 1;
  std::string metric = "fval-gap";
  std::string init = "distance";
};

/// Accepts numbers and "p/q" strings.
double number(const nlohmann::json& v);
Problem read_problem(const nlohmann::json& doc);
Problem read_problem_file(const std::string& path);

struct Run {
  std::vector<Eigen::VectorXd> iterates;  ///< x_0, ..., x_T
};

Run simulate(const Problem& p, const Quadratic& q, const Eigen::VectorXd& x0);
double metric_value(const Problem& p, const Quadratic& q, const Run& run);
double init_value(const Problem& p, const Quadratic& q, const Eigen::VectorXd& x0);

/// lambda_0 = 0, lambda_1 = 1, lambda_{t+1} = (1 + sqrt(1 + 4 lambda_t^2)) / 2.
std::vector<double> nag_lambdas(int count);

/// Left-hand side of the interpolation inequality for the ordered pair (i, j).
double interpolation_lhs(double mu, double L, const Eigen::VectorXd& xi, const Eigen::VectorXd& gi, double fi,
                         const Eigen::VectorXd& xj, const Eigen::VectorXd& gj, double fj);

/// Rate and multipliers of exact line search at T = 1 for f-gap over f-gap.
struct GdlsClosedForm {
  double tau, star0, star1, zero1, alg1, alg2;
};
GdlsClosedForm gdls_closed_form(double mu, double L);

}  // namespace oracle
