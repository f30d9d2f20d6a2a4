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

#include "pepcert/quadratic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace pepcert {

Polynomial::Polynomial(std::vector<Coef> c) : c_(std::move(c)) { trim(); }

Polynomial Polynomial::monomial(int k, const Coef& c) {
  std::vector<Coef> out(k + 1);
  out[k] = c;
  return Polynomial(std::move(out));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

bool Polynomial::is_exact() const {
  return std::all_of(c_.begin(), c_.end(), [](const Coef& c) { return c.is_exact(); });
}

Coef Polynomial::operator()(const Coef& x) const {
  Coef acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->to_double();
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<Coef> out;
  for (std::size_t k = 1; k < c_.size(); ++k) out.push_back(Coef(static_cast<long>(k)) * c_[k]);
  return Polynomial(std::move(out));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Coef> out(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t k = 0; k < a.c_.size(); ++k) out[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) out[k] += b.c_[k];
  return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + Coef(-1) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.c_.empty() || b.c_.empty()) return {};
  std::vector<Coef> out(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return Polynomial(std::move(out));
}

Polynomial operator*(const Coef& s, const Polynomial& a) {
  std::vector<Coef> out = a.c_;
  for (Coef& c : out) c *= s;
  return Polynomial(std::move(out));
}

std::string Polynomial::str() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    const bool negative = c_[k] < Coef(0);
    const Coef mag = abs(c_[k]);
    if (out.empty()) {
      if (negative) out += "−";
    } else {
      out += negative ? " − " : " + ";
    }
    const bool unit = mag == Coef(1);
    if (k == 0 || !unit) out += mag.str();
    if (k > 0) {
      if (!unit) out += "·";
      out += "λ";
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

std::vector<Polynomial> query_polynomials(const MethodSpec& method) {
  CoefficientTable table;
  try {
    table = to_coefficient_table(method);
  } catch (const MethodError& e) {
    throw QuadraticError(std::string("no residual polynomials: ") + e.what());
  }
  // g_s = H (x_s - x*), so x_k - x* = (I - H sum_s gamma_ks P_s(H)) (x_0 - x*).
  const Polynomial lambda = Polynomial::monomial(1);
  std::vector<Polynomial> R{Polynomial::constant(Coef(1))};
  for (int k = 1; k <= table.rows(); ++k) {
    Polynomial acc;
    for (std::size_t s = 0; s < table.gamma[k - 1].size(); ++s) acc = acc + table.gamma[k - 1][s] * R.at(s);
    R.push_back(Polynomial::constant(Coef(1)) - lambda * acc);
  }
  return R;
}

std::vector<Polynomial> residual_polynomials(const MethodSpec& method) {
  const std::vector<Polynomial> R = query_polynomials(method);
  std::vector<Polynomial> out;
  for (int q : method.iterates) out.push_back(R.at(q));
  return out;
}

namespace {

struct Candidate {
  double x;
  std::optional<Coef> exact;
};

// Simple roots of D in (a, b): sign changes on a Chebyshev grid, bisection,
// then Newton; grid minima of |D| are polished as well to catch even roots.
std::vector<double> interior_roots(const Polynomial& D, double a, double b, int nodes) {
  std::vector<double> xs{a, b};
  for (int j = 0; j < nodes; ++j) {
    xs.push_back(0.5 * (a + b) + 0.5 * (b - a) * std::cos(std::numbers::pi * (2 * j + 1) / (2.0 * nodes)));
  }
  std::sort(xs.begin(), xs.end());
  const Polynomial dD = D.derivative();
  auto newton = [&](double x) {
    for (int it = 0; it < 50; ++it) {
      const double d = dD(x);
      if (d == 0.0) break;
      const double nx = x - D(x) / d;
      if (!std::isfinite(nx)) break;
      if (std::abs(nx - x) <= 1e-16 * std::max(1.0, std::abs(x))) {
        x = nx;
        break;
      }
      x = nx;
    }
    return x;
  };
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    double lo = xs[i], hi = xs[i + 1];
    double flo = D(lo), fhi = D(hi);
    if (flo == 0.0) out.push_back(lo);
    if (flo * fhi < 0.0) {
      for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = D(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      const double x = newton(0.5 * (lo + hi));
      out.push_back(x >= xs[i] && x <= xs[i + 1] ? x : 0.5 * (lo + hi));
    }
  }
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    const double m = std::abs(D(xs[i]));
    if (m <= std::abs(D(xs[i - 1])) && m <= std::abs(D(xs[i + 1]))) {
      const double x = newton(xs[i]);
      if (x > a && x < b) out.push_back(x);
    }
  }
  return out;
}

}  // namespace

QuadraticBound sup_ratio(const Polynomial& N, int d, const Coef& mu, const Coef& L) {
  if (d != 0 && d != 1) throw QuadraticError("sup_ratio supports lambda^0 and lambda^1 denominators");
  if (mu > L) throw QuadraticError("empty spectral interval: mu > L");
  if (d == 1 && !(mu > Coef(0))) {
    QuadraticBound out;
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  const auto h_exact = [&](const Coef& x) { return d == 0 ? abs(N(x)) : abs(N(x)) / x; };
  const auto h = [&](double x) { return d == 0 ? std::abs(N(x)) : std::abs(N(x)) / x; };

  const Polynomial lambda = Polynomial::monomial(1);
  const Polynomial D = d == 0 ? N.derivative() : lambda * N.derivative() - N;

  std::vector<Candidate> cand{{mu.to_double(), mu}, {L.to_double(), L}};
  const double a = mu.to_double(), b = L.to_double();
  if (D.degree() == 1 && D.is_exact()) {
    const Coef root = -D.coefficients()[0] / D.coefficients()[1];
    if (root > mu && root < L) cand.push_back({root.to_double(), root});
  } else if (D.degree() >= 1 && b > a) {
    for (double x : interior_roots(D, a, b, 4 * std::max(N.degree(), 0) + 64)) cand.push_back({x, std::nullopt});
  }

  double best = -1.0;
  for (const Candidate& c : cand) best = std::max(best, h(c.x));
  QuadraticBound out;
  out.value = best;
  const double slack = 1e-12 * std::max(1.0, best);
  // Prefer an exact maximizer when it attains the numeric best.
  for (const Candidate& c : cand) {
    if (c.exact && N.is_exact() && h(c.x) >= best - slack) {
      out.exact = h_exact(*c.exact);
      out.value = out.exact->to_double();
      out.lambda_star = c.x;
      return out;
    }
  }
  for (const Candidate& c : cand) {
    if (h(c.x) == best) {
      out.lambda_star = c.x;
      break;
    }
  }
  return out;
}

QuadraticBound worst_case_quadratic(const Polynomial& P, const Coef& mu, const Coef& L) {
  return sup_ratio(P, 0, mu, L);
}

QuadraticBound quadratic_worst_case(const MethodSpec& method, const FunctionClassSpec& cls,
                                    const PerformanceMetric& metric, const InitialCondition& init) {
  if (!cls.smooth()) throw QuadraticError("quadratic analysis needs a finite L");
  if (metric.kind == PerformanceMetric::Kind::MinGradientNormSquared) {
    throw QuadraticError("the min-gradient metric does not reduce to a single eigenvalue");
  }
  const std::vector<Polynomial> R = query_polynomials(method);
  int q = method.final_iterate();
  if (!metric.at.empty()) {
    if (metric.at.size() != 1) throw QuadraticError("quadratic analysis needs a single metric point");
    auto it = std::find_if(method.queries.begin(), method.queries.end(),
                           [&](const QueryEvent& ev) { return ev.tag == metric.at[0]; });
    if (it == method.queries.end()) throw QuadraticError("unknown metric point " + metric.at[0]);
    q = static_cast<int>(it - method.queries.begin());
  }
  const Polynomial P2 = R.at(q) * R.at(q);
  const Polynomial lambda = Polynomial::monomial(1);
  const Coef half = Coef::ratio(1, 2);

  // Spectral weights: ||x - x*||^2 -> 1, f - f* -> lambda/2, ||g||^2 -> lambda^2.
  const bool fgap_init = init.kind == InitialCondition::Kind::FunctionValueGap;
  switch (metric.kind) {
    case PerformanceMetric::Kind::DistanceSquared:
      return fgap_init ? sup_ratio(Coef(2) * P2, 1, cls.mu, *cls.L) : sup_ratio(P2, 0, cls.mu, *cls.L);
    case PerformanceMetric::Kind::FunctionValueGap:
      return fgap_init ? sup_ratio(P2, 0, cls.mu, *cls.L) : sup_ratio(half * (lambda * P2), 0, cls.mu, *cls.L);
    case PerformanceMetric::Kind::GradientNormSquared:
      return fgap_init ? sup_ratio(Coef(2) * (lambda * P2), 0, cls.mu, *cls.L)
                       : sup_ratio(lambda * lambda * P2, 0, cls.mu, *cls.L);
    case PerformanceMetric::Kind::MinGradientNormSquared:
      break;
  }
  throw QuadraticError("unsupported metric");
}

}  // namespace pepcert
