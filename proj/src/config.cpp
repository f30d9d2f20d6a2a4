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

#include "pepcert/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace pepcert {

namespace {

std::string locate(const std::string& field, int line, int column) {
  std::string where;
  if (line > 0) where = "line " + std::to_string(line) + ", column " + std::to_string(column);
  if (!field.empty()) where += (where.empty() ? "" : ", ") + std::string("field ") + field;
  return where.empty() ? "config" : where;
}

}  // namespace

ConfigError::ConfigError(std::string f, int l, int c, const std::string& message)
    : std::runtime_error(locate(f, l, c) + ": " + message), field(std::move(f)), line(l), column(c) {}

namespace {

using nlohmann::json;

std::pair<int, int> line_col(const std::string& text, std::size_t offset) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

class Reader {
 public:
  explicit Reader(const std::string& text) : text_(text) {}

  [[noreturn]] void fail(const std::string& path, const std::string& message) const {
    // Points at the first occurrence of the offending key, when there is one.
    const std::string key = path.substr(path.find_last_of('.') + 1);
    int line = 0, col = 0;
    if (!key.empty() && key.find('[') == std::string::npos) {
      const std::size_t at = text_.find("\"" + key + "\"");
      if (at != std::string::npos) std::tie(line, col) = line_col(text_, at);
    }
    throw ConfigError(path, line, col, message);
  }

  void only(const json& obj, const std::string& path, std::initializer_list<const char*> keys) const {
    if (!obj.is_object()) fail(path, "expected an object");
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, v] : obj.items()) {
      if (!allowed.contains(k)) fail(path.empty() ? k : path + "." + k, "unknown key");
    }
  }

  const json& need(const json& obj, const std::string& path, const char* key) const {
    if (!obj.contains(key)) fail(path, std::string("missing key \"") + key + "\"");
    return obj.at(key);
  }

  Coef number(const json& v, const std::string& path) const {
    if (v.is_number_integer()) return Coef(v.get<long>());
    if (v.is_number_float()) return Coef::from_decimal(v.get<double>());
    if (v.is_string()) {
      try {
        return Coef::parse(v.get<std::string>());
      } catch (const std::invalid_argument& e) {
        fail(path, e.what());
      }
    }
    fail(path, "expected a number or a rational string");
  }

  double real(const json& v, const std::string& path) const {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
  }

  int integer(const json& v, const std::string& path) const {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<int>();
  }

  bool boolean(const json& v, const std::string& path) const {
    if (!v.is_boolean()) fail(path, "expected true or false");
    return v.get<bool>();
  }

  std::string string(const json& v, const std::string& path) const {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
  }

 private:
  const std::string& text_;
};

PerformanceMetric::Kind metric_kind(const std::string& s) {
  if (s == "fval-gap") return PerformanceMetric::Kind::FunctionValueGap;
  if (s == "distance") return PerformanceMetric::Kind::DistanceSquared;
  if (s == "gradient-norm") return PerformanceMetric::Kind::GradientNormSquared;
  if (s == "min-gradient-norm") return PerformanceMetric::Kind::MinGradientNormSquared;
  throw std::invalid_argument("unknown metric kind \"" + s +
                              "\" (fval-gap, distance, gradient-norm, min-gradient-norm)");
}

std::string metric_name(PerformanceMetric::Kind k) {
  switch (k) {
    case PerformanceMetric::Kind::FunctionValueGap:
      return "fval-gap";
    case PerformanceMetric::Kind::DistanceSquared:
      return "distance";
    case PerformanceMetric::Kind::GradientNormSquared:
      return "gradient-norm";
    case PerformanceMetric::Kind::MinGradientNormSquared:
      return "min-gradient-norm";
  }
  return "";
}

json coef_doc(const Coef& c) {
  if (c.is_exact() && c.rational().get_den() == 1) return json(c.rational().get_num().get_si());
  return json(c.str());
}

}  // namespace

ProblemConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string what = e.what();
    const std::size_t cut = what.find("parse error");
    throw ConfigError("", line, col, cut == std::string::npos ? what : what.substr(cut));
  }
  Reader r(text);
  r.only(doc, "", {"class", "method", "T", "metric", "init", "solver", "analyses"});
  ProblemConfig cfg;

  const json& cls = r.need(doc, "", "class");
  r.only(cls, "class", {"mu", "L"});
  const Coef mu = cls.contains("mu") ? r.number(cls.at("mu"), "class.mu") : Coef(0);
  std::optional<Coef> L;
  const json& lj = r.need(cls, "class", "L");
  if (!(lj.is_string() && lj.get<std::string>() == "inf")) L = r.number(lj, "class.L");
  try {
    cfg.cls = FunctionClassSpec::smooth_strongly_convex(mu, L);
  } catch (const std::exception& e) {
    r.fail("class", e.what());
  }

  cfg.T = r.integer(r.need(doc, "", "T"), "T");
  if (cfg.T < 1) r.fail("T", "T must be at least 1");

  const json& m = r.need(doc, "", "method");
  cfg.method_doc = m;
  if (!m.is_object()) r.fail("method", "expected an object");
  const std::string name = r.string(r.need(m, "method", "name"), "method.name");
  auto need_L = [&](const std::string& what) {
    if (m.contains("L")) return r.number(m.at("L"), "method.L");
    if (!cfg.cls.L) r.fail("method", what + " needs a finite L (set class.L or method.L)");
    return *cfg.cls.L;
  };
  try {
    if (name == "gd") {
      r.only(m, "method", {"name", "step", "L"});
      const Coef step = m.contains("step") ? r.number(m.at("step"), "method.step") : Coef(1) / need_L("gd");
      cfg.method = gradient_descent(step, cfg.T);
    } else if (name == "nag") {
      r.only(m, "method", {"name", "L"});
      cfg.method = nag(need_L("nag"), cfg.T);
    } else if (name == "hb-qg") {
      r.only(m, "method", {"name", "L"});
      cfg.method = heavy_ball_qg(need_L("hb-qg"), cfg.T);
    } else if (name == "gdls") {
      r.only(m, "method", {"name"});
      cfg.method = gdls(cfg.T);
    } else if (name == "gfom") {
      r.only(m, "method", {"name"});
      cfg.method = gfom(cfg.T);
    } else if (name == "explicit") {
      r.only(m, "method", {"name", "table"});
      const json& rows = r.need(m, "method", "table");
      if (!rows.is_array()) r.fail("method.table", "expected an array of rows");
      CoefficientTable table;
      for (std::size_t k = 0; k < rows.size(); ++k) {
        const std::string path = "method.table[" + std::to_string(k) + "]";
        if (!rows[k].is_array()) r.fail(path, "expected an array of step weights");
        if (rows[k].size() > k + 1) r.fail(path, "row " + std::to_string(k + 1) + " has more than k weights");
        std::vector<Coef> row;
        for (std::size_t s = 0; s < rows[k].size(); ++s) {
          row.push_back(r.number(rows[k][s], path + "[" + std::to_string(s) + "]"));
        }
        table.gamma.push_back(std::move(row));
      }
      if (table.rows() != cfg.T) r.fail("method.table", "table has " + std::to_string(table.rows()) +
                                                             " rows but T = " + std::to_string(cfg.T));
      cfg.method = explicit_method(table);
    } else {
      r.fail("method.name", "unknown method \"" + name + "\" (gd, nag, hb-qg, gdls, gfom, explicit)");
    }
  } catch (const MethodError& e) {
    r.fail("method", e.what());
  }

  if (doc.contains("metric")) {
    const json& mj = doc.at("metric");
    r.only(mj, "metric", {"kind", "at"});
    try {
      cfg.metric.kind = metric_kind(r.string(r.need(mj, "metric", "kind"), "metric.kind"));
    } catch (const std::invalid_argument& e) {
      r.fail("metric.kind", e.what());
    }
    if (mj.contains("at")) {
      const json& at = mj.at("at");
      if (!at.is_array()) r.fail("metric.at", "expected an array of point tags");
      for (std::size_t i = 0; i < at.size(); ++i) {
        cfg.metric.at.push_back(r.string(at[i], "metric.at[" + std::to_string(i) + "]"));
      }
    }
  }

  if (doc.contains("init")) {
    const json& ij = doc.at("init");
    r.only(ij, "init", {"kind", "R"});
    const std::string kind = r.string(r.need(ij, "init", "kind"), "init.kind");
    if (kind == "distance") {
      cfg.init.kind = InitialCondition::Kind::DistanceSquared;
    } else if (kind == "fval-gap") {
      cfg.init.kind = InitialCondition::Kind::FunctionValueGap;
    } else {
      r.fail("init.kind", "unknown init kind \"" + kind + "\" (distance, fval-gap)");
    }
    if (ij.contains("R")) {
      cfg.init.R = r.number(ij.at("R"), "init.R");
      if (!(cfg.init.R > Coef(0))) r.fail("init.R", "R must be positive");
    }
  }

  if (doc.contains("solver")) {
    const json& sj = doc.at("solver");
    r.only(sj, "solver", {"tol", "max_iter"});
    if (sj.contains("tol")) {
      cfg.solver.tol = r.real(sj.at("tol"), "solver.tol");
      if (!(cfg.solver.tol > 0.0 && cfg.solver.tol <= 1e-2)) r.fail("solver.tol", "tol must lie in (0, 1e-2]");
    }
    if (sj.contains("max_iter")) {
      cfg.solver.max_iter = r.integer(sj.at("max_iter"), "solver.max_iter");
      if (cfg.solver.max_iter < 1) r.fail("solver.max_iter", "max_iter must be positive");
    }
  }

  if (doc.contains("analyses")) {
    const json& aj = doc.at("analyses");
    r.only(aj, "analyses",
           {"certificate", "proof", "lyapunov", "quadratic", "worst-case-instance", "backtracking-report"});
    auto flag = [&](const char* key, bool& out) {
      if (aj.contains(key)) out = r.boolean(aj.at(key), std::string("analyses.") + key);
    };
    flag("certificate", cfg.analyses.certificate);
    flag("proof", cfg.analyses.proof);
    flag("lyapunov", cfg.analyses.lyapunov);
    flag("quadratic", cfg.analyses.quadratic);
    flag("worst-case-instance", cfg.analyses.worst_case_instance);
    flag("backtracking-report", cfg.analyses.backtracking_report);
  }

  try {
    (void)cfg.build();
  } catch (const PepError& e) {
    r.fail("metric", e.what());
  }
  return cfg;
}

ProblemConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", 0, 0, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

PepProblem ProblemConfig::build() const { return pepcert::build(cls, method, metric, init); }

nlohmann::json to_json(const ProblemConfig& c) {
  json out;
  out["class"] = {{"mu", coef_doc(c.cls.mu)}, {"L", c.cls.L ? coef_doc(*c.cls.L) : json("inf")}};
  out["method"] = c.method_doc;
  out["T"] = c.T;
  out["metric"] = {{"kind", metric_name(c.metric.kind)}};
  if (!c.metric.at.empty()) out["metric"]["at"] = c.metric.at;
  out["init"] = {{"kind", c.init.kind == InitialCondition::Kind::DistanceSquared ? "distance" : "fval-gap"},
                 {"R", coef_doc(c.init.R)}};
  out["solver"] = {{"tol", c.solver.tol}, {"max_iter", c.solver.max_iter}};
  out["analyses"] = {{"certificate", c.analyses.certificate},
                     {"proof", c.analyses.proof},
                     {"lyapunov", c.analyses.lyapunov},
                     {"quadratic", c.analyses.quadratic},
                     {"worst-case-instance", c.analyses.worst_case_instance},
                     {"backtracking-report", c.analyses.backtracking_report}};
  return out;
}

}  // namespace pepcert
