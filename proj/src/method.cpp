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

#include "pepcert/method.hpp"

#include <set>

namespace pepcert {

namespace {

const VectorExpr& x0() {
  static const VectorExpr e = VectorExpr::unit(BasisLabel::initial());
  return e;
}

VectorExpr grad(int q) { return VectorExpr::unit(BasisLabel::gradient(q)); }
VectorExpr free_pt(int q) { return VectorExpr::unit(BasisLabel::free_point(q)); }

QueryEvent initial_query() {
  QueryEvent q;
  q.tag = "0";
  q.display = "x_0";
  q.iteration = 0;
  q.position = x0();
  return q;
}

QueryEvent iterate_query(int t, VectorExpr position) {
  QueryEvent q;
  q.tag = std::to_string(t);
  q.display = "x_" + std::to_string(t);
  q.iteration = t;
  q.position = std::move(position);
  return q;
}

std::vector<int> iota(int n) {
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) out[i] = i;
  return out;
}

// Labels an expression attached to query q may reference.
void check_labels(const VectorExpr& e, int q, bool allow_own, const std::string& what) {
  for (const auto& [label, w] : e.terms()) {
    switch (label.kind) {
      case BasisLabel::Kind::Initial:
        break;
      case BasisLabel::Kind::Optimizer:
        throw MethodError(what + " references the optimizer");
      case BasisLabel::Kind::Free:
      case BasisLabel::Kind::Gradient:
        if (label.index > q || (label.index == q && !allow_own)) {
          throw MethodError(what + " references " + to_string(label) + " from a later query");
        }
        break;
    }
  }
}

}  // namespace

bool MethodSpec::is_explicit() const {
  for (const auto& q : queries) {
    if (q.free) return false;
  }
  return true;
}

std::size_t MethodSpec::relation_count() const {
  std::size_t n = 0;
  for (const auto& q : queries) n += q.relations.size();
  return n;
}

void MethodSpec::validate() const {
  if (queries.empty()) throw MethodError("method has no queries");
  if (queries.front().free || !(queries.front().position == x0())) {
    throw MethodError("query 0 must be the initial point x0");
  }
  if (iterates.empty() || iterates.front() != 0) throw MethodError("iterates must start at x0");
  for (int it : iterates) {
    if (it < 0 || it >= query_count()) throw MethodError("iterate refers to a missing query");
  }
  std::set<std::string> ids;
  std::set<std::string> tags;
  for (int q = 0; q < query_count(); ++q) {
    const QueryEvent& ev = queries[q];
    if (!tags.insert(ev.tag).second) throw MethodError("duplicate query tag " + ev.tag);
    if (ev.free) {
      if (!(ev.position == free_pt(q))) throw MethodError("free query must sit at its own free point");
      if (ev.relations.empty()) throw MethodError("free point " + ev.display + " is unconstrained");
    } else {
      check_labels(ev.position, q, false, "point " + ev.display);
    }
    for (const auto& rel : ev.relations) {
      if (rel.id.rfind("ALG", 0) != 0) throw MethodError("algorithm relation id must start with ALG");
      if (!ids.insert(rel.id).second) throw MethodError("duplicate relation id " + rel.id);
      check_labels(rel.left, q, true, rel.id);
      check_labels(rel.right, q, true, rel.id);
    }
  }
}

const Coef& CoefficientTable::at(int k, int s) const {
  static const Coef zero;
  const auto& row = gamma.at(k - 1);
  return s < static_cast<int>(row.size()) ? row[s] : zero;
}

MethodSpec explicit_method(const CoefficientTable& table) {
  const int n = table.rows();
  const auto has_meta = [&](std::size_t size) { return size == static_cast<std::size_t>(n + 1); };
  if (!table.tags.empty() && !has_meta(table.tags.size())) throw MethodError("table tag count mismatch");
  if (!table.displays.empty() && !has_meta(table.displays.size())) {
    throw MethodError("table display count mismatch");
  }
  if (!table.iterations.empty() && !has_meta(table.iterations.size())) {
    throw MethodError("table iteration count mismatch");
  }

  MethodSpec m;
  m.name = table.name;
  m.queries.push_back(initial_query());
  for (int k = 1; k <= n; ++k) {
    const auto& row = table.gamma[k - 1];
    if (static_cast<int>(row.size()) > k) {
      throw MethodError("row " + std::to_string(k) + " references a future gradient");
    }
    VectorExpr pos = x0();
    for (int s = 0; s < static_cast<int>(row.size()); ++s) pos -= grad(s) * row[s];
    m.queries.push_back(iterate_query(k, std::move(pos)));
  }
  for (int q = 0; q <= n; ++q) {
    if (!table.tags.empty()) m.queries[q].tag = table.tags[q];
    if (!table.displays.empty()) m.queries[q].display = table.displays[q];
    if (!table.iterations.empty()) m.queries[q].iteration = table.iterations[q];
  }
  m.iterates = table.iterates.empty() ? iota(n + 1) : table.iterates;
  m.T = static_cast<int>(m.iterates.size()) - 1;
  m.validate();
  return m;
}

CoefficientTable to_coefficient_table(const MethodSpec& method) {
  CoefficientTable table;
  table.name = method.name;
  table.iterates = method.iterates;
  for (int q = 0; q < method.query_count(); ++q) {
    const QueryEvent& ev = method.queries[q];
    if (ev.free) throw MethodError("implicit method has no coefficient table");
    table.tags.push_back(ev.tag);
    table.displays.push_back(ev.display);
    table.iterations.push_back(ev.iteration);
    if (q == 0) continue;
    if (!(ev.position.coefficient(BasisLabel::initial()) == Coef(1))) {
      throw MethodError("point " + ev.display + " is not of the form x0 - sum gamma g");
    }
    std::vector<Coef> row(q);
    for (const auto& [label, w] : ev.position.terms()) {
      if (label.kind == BasisLabel::Kind::Initial) continue;
      if (label.kind != BasisLabel::Kind::Gradient || label.index >= q) {
        throw MethodError("point " + ev.display + " is not of the form x0 - sum gamma g");
      }
      row[label.index] = -w;
    }
    while (!row.empty() && row.back().is_zero()) row.pop_back();
    table.gamma.push_back(std::move(row));
  }
  return table;
}

MethodSpec gradient_descent(const Coef& step, int T) {
  if (T < 0) throw MethodError("T must be nonnegative");
  CoefficientTable table;
  table.name = "gd";
  for (int t = 1; t <= T; ++t) table.gamma.emplace_back(t, step);
  return explicit_method(table);
}

std::vector<Coef> nag_lambdas(int T) {
  std::vector<Coef> lam{Coef(0), Coef(1)};
  const Coef quarter = Coef::ratio(1, 4);
  const Coef half = Coef::ratio(1, 2);
  while (static_cast<int>(lam.size()) < T + 2) {
    const Coef& prev = lam.back();
    lam.push_back(half + sqrt(quarter + prev * prev));
  }
  return lam;
}

MethodSpec nag(const Coef& L, int T) {
  if (T < 1) throw MethodError("NAG needs T >= 1");
  if (!(L > Coef(0))) throw MethodError("NAG needs a finite positive L");
  const std::vector<Coef> lam = nag_lambdas(T);
  const Coef step = Coef(1) / L;

  MethodSpec m;
  m.name = "nag";
  m.T = T;
  m.queries.push_back(initial_query());
  m.iterates.push_back(0);
  // Query ordinal of the point whose oracle serves as y_t.
  VectorExpr x_prev = x0();
  VectorExpr x_cur = x0();
  for (int t = 0; t < T; ++t) {
    const Coef momentum = (lam[t] - Coef(1)) / lam[t + 1];
    // With x_{-1} = x_0 and lambda_1 = 1, y_0 = x_0 and y_1 = x_1; the
    // queries are still emitted and share the oracle of the iterate.
    QueryEvent ev;
    ev.tag = "y" + std::to_string(t);
    ev.display = "y_" + std::to_string(t);
    ev.iteration = t;
    ev.position = x_cur + (x_cur - x_prev) * momentum;
    const VectorExpr y = ev.position;
    m.queries.push_back(std::move(ev));
    const int y_query = m.query_count() - 1;
    VectorExpr x_next = y - grad(y_query) * step;
    m.queries.push_back(iterate_query(t + 1, x_next));
    m.iterates.push_back(m.query_count() - 1);
    x_prev = std::move(x_cur);
    x_cur = std::move(x_next);
  }
  m.validate();
  return m;
}

MethodSpec heavy_ball_qg(const Coef& L, int T) {
  if (!(L > Coef(0))) throw MethodError("heavy ball needs a finite positive L");
  CoefficientTable table;
  table.name = "hb-qg";
  std::vector<Coef> prev;
  for (int t = 1; t <= T; ++t) {
    // x_t - x_0 = t/(t+1) (x_{t-1} - x_0) - 1/((t+1) L) sum_{s<t} g_s
    const Coef keep = Coef::ratio(t, t + 1);
    const Coef fresh = Coef(1) / (Coef(t + 1) * L);
    std::vector<Coef> row(t);
    for (int s = 0; s < t; ++s) row[s] = (s < t - 1 ? keep * prev[s] : Coef()) + fresh;
    table.gamma.push_back(row);
    prev = std::move(row);
  }
  return explicit_method(table);
}

MethodSpec gdls(int T) {
  if (T < 0) throw MethodError("T must be nonnegative");
  MethodSpec m;
  m.name = "gdls";
  m.T = T;
  m.queries.push_back(initial_query());
  m.iterates.push_back(0);
  for (int t = 1; t <= T; ++t) {
    QueryEvent ev = iterate_query(t, free_pt(t));
    ev.free = true;
    const VectorExpr prev_pos = t == 1 ? x0() : free_pt(t - 1);
    ev.relations.push_back({"ALG(" + std::to_string(2 * t - 1) + ")", grad(t), grad(t - 1), Sense::Equal});
    ev.relations.push_back({"ALG(" + std::to_string(2 * t) + ")", grad(t), free_pt(t) - prev_pos, Sense::Equal});
    m.queries.push_back(std::move(ev));
    m.iterates.push_back(t);
  }
  m.validate();
  return m;
}

MethodSpec gfom(int T) {
  if (T < 0) throw MethodError("T must be nonnegative");
  MethodSpec m;
  m.name = "gfom";
  m.T = T;
  m.queries.push_back(initial_query());
  m.iterates.push_back(0);
  int next_id = 1;
  const auto id = [&] { return "ALG(" + std::to_string(next_id++) + ")"; };
  for (int t = 1; t <= T; ++t) {
    QueryEvent ev = iterate_query(t, free_pt(t));
    ev.free = true;
    for (int s = 0; s < t; ++s) ev.relations.push_back({id(), grad(t), grad(s), Sense::Equal});
    // s = 0 gives <g_t, x_0 - x_0> = 0, which is identically zero.
    for (int s = 1; s <= t; ++s) ev.relations.push_back({id(), grad(t), free_pt(s) - x0(), Sense::Equal});
    m.queries.push_back(std::move(ev));
    m.iterates.push_back(t);
  }
  m.validate();
  return m;
}

}  // namespace pepcert
