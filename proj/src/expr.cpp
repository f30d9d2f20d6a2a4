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

#include "pepcert/expr.hpp"

#include <algorithm>
#include <sstream>

#include "pepcert/format.hpp"

namespace pepcert {

std::string to_string(const BasisLabel& label) {
  switch (label.kind) {
    case BasisLabel::Kind::Optimizer:
      return "x*";
    case BasisLabel::Kind::Initial:
      return "x0";
    case BasisLabel::Kind::Free:
      return "free" + std::to_string(label.index);
    case BasisLabel::Kind::Gradient:
      return "g" + std::to_string(label.index);
  }
  return "?";
}

int Basis::add(const BasisLabel& label, std::string display_name) {
  if (index_.contains(label)) throw BasisError("duplicate basis label " + to_string(label));
  const int i = size();
  labels_.push_back(label);
  names_.push_back(std::move(display_name));
  index_.emplace(label, i);
  return i;
}

int Basis::index_of(const BasisLabel& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw BasisError("label " + to_string(label) + " is not in the basis");
  return it->second;
}

std::optional<int> Basis::find(const BasisLabel& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------

VectorExpr VectorExpr::unit(const BasisLabel& label, const Coef& weight) {
  VectorExpr e;
  e.add_term(label, weight);
  return e;
}

void VectorExpr::add_term(const BasisLabel& label, const Coef& weight) {
  if (weight.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(label, weight);
  if (!inserted) {
    it->second += weight;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Coef VectorExpr::coefficient(const BasisLabel& label) const {
  auto it = terms_.find(label);
  return it == terms_.end() ? Coef() : it->second;
}

VectorExpr VectorExpr::substitute(const BasisLabel& label, const VectorExpr& replacement) const {
  auto it = terms_.find(label);
  if (it == terms_.end()) return *this;
  VectorExpr out = *this;
  const Coef w = it->second;
  out.terms_.erase(label);
  out += replacement * w;
  return out;
}

VectorExpr& VectorExpr::operator+=(const VectorExpr& o) {
  for (const auto& [label, w] : o.terms_) add_term(label, w);
  return *this;
}

VectorExpr& VectorExpr::operator-=(const VectorExpr& o) {
  for (const auto& [label, w] : o.terms_) add_term(label, -w);
  return *this;
}

VectorExpr& VectorExpr::operator*=(const Coef& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

Eigen::VectorXd VectorExpr::dense(const Basis& basis) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(basis.size());
  for (const auto& [label, w] : terms_) out[basis.index_of(label)] = w.to_double();
  return out;
}

// ---------------------------------------------------------------------------

namespace {

template <class Key>
void accumulate(std::map<Key, Coef>& terms, const Key& key, const Coef& weight) {
  if (weight.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(key, weight);
  if (!inserted) {
    it->second += weight;
    if (it->second.is_zero()) terms.erase(it);
  }
}

}  // namespace

ScalarExpr ScalarExpr::constant(const Coef& c) {
  ScalarExpr e;
  e.c_ = c;
  return e;
}

Coef ScalarExpr::v(int f_index) const {
  auto it = v_.find(f_index);
  return it == v_.end() ? Coef() : it->second;
}

Coef ScalarExpr::m(int i, int j) const {
  auto it = m_.find({std::min(i, j), std::max(i, j)});
  return it == m_.end() ? Coef() : it->second;
}

void ScalarExpr::add_v(int f_index, const Coef& weight) { accumulate(v_, f_index, weight); }

void ScalarExpr::add_m(int i, int j, const Coef& weight) {
  accumulate(m_, std::pair{std::min(i, j), std::max(i, j)}, weight);
}

void ScalarExpr::add_c(const Coef& weight) { c_ += weight; }

bool ScalarExpr::touches_basis(int i) const {
  return std::any_of(m_.begin(), m_.end(),
                     [i](const auto& kv) { return kv.first.first == i || kv.first.second == i; });
}

bool ScalarExpr::touches_f(int f_index) const { return v_.contains(f_index); }

int ScalarExpr::max_basis_index() const {
  int out = -1;
  for (const auto& [ij, w] : m_) out = std::max(out, ij.second);
  return out;
}

int ScalarExpr::max_f_index() const { return v_.empty() ? -1 : v_.rbegin()->first; }

ScalarExpr& ScalarExpr::operator+=(const ScalarExpr& o) {
  for (const auto& [k, w] : o.v_) accumulate(v_, k, w);
  for (const auto& [k, w] : o.m_) accumulate(m_, k, w);
  c_ += o.c_;
  return *this;
}

ScalarExpr& ScalarExpr::operator-=(const ScalarExpr& o) { return *this += o * Coef(-1); }

ScalarExpr& ScalarExpr::operator*=(const Coef& s) {
  if (s.is_zero()) {
    *this = ScalarExpr();
    return *this;
  }
  for (auto& [k, w] : v_) w *= s;
  for (auto& [k, w] : m_) w *= s;
  c_ *= s;
  return *this;
}

Eigen::VectorXd ScalarExpr::dense_v(int f_dim) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(f_dim);
  for (const auto& [k, w] : v_) {
    if (k >= f_dim) throw BasisError("function-value index out of range");
    out[k] = w.to_double();
  }
  return out;
}

Eigen::MatrixXd ScalarExpr::dense_m(int n) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [ij, w] : m_) {
    if (ij.second >= n) throw BasisError("basis index out of range");
    out(ij.first, ij.second) = w.to_double();
    out(ij.second, ij.first) = w.to_double();
  }
  return out;
}

std::vector<Coef> ScalarExpr::exact_v(int f_dim) const {
  std::vector<Coef> out(f_dim);
  for (const auto& [k, w] : v_) out.at(k) = w;
  return out;
}

std::vector<std::vector<Coef>> ScalarExpr::exact_m(int n) const {
  std::vector<std::vector<Coef>> out(n, std::vector<Coef>(n));
  for (const auto& [ij, w] : m_) {
    out.at(ij.first).at(ij.second) = w;
    out.at(ij.second).at(ij.first) = w;
  }
  return out;
}

double ScalarExpr::evaluate(const Eigen::VectorXd& F, const Eigen::MatrixXd& G) const {
  double out = c_.to_double();
  for (const auto& [k, w] : v_) out += w.to_double() * F[k];
  for (const auto& [ij, w] : m_) {
    const double g = G(ij.first, ij.second);
    out += (ij.first == ij.second ? 1.0 : 2.0) * w.to_double() * g;
  }
  return out;
}

ScalarExpr inner_product(const Basis& basis, const VectorExpr& a, const VectorExpr& b) {
  ScalarExpr out;
  const Coef half = Coef::ratio(1, 2);
  for (const auto& [la, wa] : a.terms()) {
    const int p = basis.index_of(la);
    for (const auto& [lb, wb] : b.terms()) {
      const int q = basis.index_of(lb);
      // Each ordered pair (p, q) contributes a_p b_q to the bilinear form,
      // split evenly between the two symmetric entries.
      out.add_m(p, q, p == q ? wa * wb : wa * wb * half);
    }
  }
  return out;
}

ScalarExpr squared_norm(const Basis& basis, const VectorExpr& a) { return inner_product(basis, a, a); }

ScalarExpr fval(int f_index, int f_dim) {
  if (f_index < 0 || f_index >= f_dim) {
    throw BasisError("function value f[" + std::to_string(f_index) + "] is not registered");
  }
  ScalarExpr out;
  out.add_v(f_index, Coef(1));
  return out;
}

ScalarExpr scalar_combine(const std::vector<std::pair<Coef, ScalarExpr>>& terms) {
  ScalarExpr out;
  for (const auto& [w, e] : terms) out += e * w;
  return out;
}

std::string to_string(Sense sense) { return sense == Sense::Equal ? "= 0" : "<= 0"; }

std::string to_string(AtomTag tag) {
  switch (tag) {
    case AtomTag::Class:
      return "class";
    case AtomTag::Algorithm:
      return "algorithm";
    case AtomTag::Initialization:
      return "initialization";
    case AtomTag::Metric:
      return "metric";
  }
  return "?";
}

std::string render(const VectorExpr& e, const Basis& basis) {
  if (e.is_zero()) return "0";
  std::vector<std::pair<int, Coef>> ordered;
  for (const auto& [label, w] : e.terms()) {
    auto idx = basis.find(label);
    ordered.emplace_back(idx ? *idx : basis.size() + 1, w);
  }
  std::vector<std::string> names;
  for (const auto& [label, w] : e.terms()) {
    auto idx = basis.find(label);
    names.push_back(idx ? basis.name(*idx) : to_string(label));
  }
  std::vector<std::size_t> order(ordered.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return ordered[a].first < ordered[b].first; });
  // Lead with the first positive term: "x_1 − x_0" rather than "−x_0 + x_1".
  auto lead = std::find_if(order.begin(), order.end(), [&](std::size_t k) { return ordered[k].second > Coef(0); });
  if (lead != order.end()) std::rotate(order.begin(), lead, lead + 1);
  std::ostringstream os;
  bool first = true;
  for (std::size_t k : order) {
    os << signed_term(ordered[k].second, names[k], first);
    first = false;
  }
  return os.str();
}

std::string render(const ScalarExpr& e, const Basis& basis, const std::vector<std::string>& f_names) {
  std::ostringstream os;
  bool first = true;
  std::vector<std::pair<int, Coef>> fs(e.v_terms().begin(), e.v_terms().end());
  auto lead = std::find_if(fs.begin(), fs.end(), [](const auto& t) { return t.second > Coef(0); });
  if (lead != fs.end()) std::rotate(fs.begin(), lead, lead + 1);
  for (const auto& [k, w] : fs) {
    os << signed_term(w, k < static_cast<int>(f_names.size()) ? f_names[k] : "F" + std::to_string(k), first);
    first = false;
  }
  for (const auto& [ij, w] : e.m_terms()) {
    const auto& [i, j] = ij;
    if (i == j) {
      os << signed_term(w, "‖" + basis.name(i) + "‖²", first);
    } else {
      os << signed_term(w * Coef(2), "⟨" + basis.name(i) + ", " + basis.name(j) + "⟩", first);
    }
    first = false;
  }
  if (!e.c().is_zero() || first) {
    if (first) {
      os << display(e.c());
    } else {
      os << (e.c() < Coef(0) ? " − " : " + ") << display(abs(e.c()));
    }
  }
  return os.str();
}

}  // namespace pepcert
