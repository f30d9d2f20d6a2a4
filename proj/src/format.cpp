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

#include "pepcert/format.hpp"

#include <fmt/format.h>

namespace pepcert {

std::string display(const Coef& c) {
  if (c.is_exact()) return c.str();
  return display(c.to_double());
}

std::string display(double x) { return fmt::format("{:.10g}", x); }

std::string signed_term(const Coef& weight, const std::string& name, bool first) {
  const bool negative = weight < Coef(0);
  const Coef magnitude = negative ? -weight : weight;
  std::string body = magnitude == Coef(1) ? name : display(magnitude) + "·" + name;
  if (first) return negative ? "−" + body : body;
  return (negative ? " − " : " + ") + body;
}

}  // namespace pepcert
