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

// Text formatting shared by the proof, report and notation renderers.

#pragma once

#include <string>

#include "pepcert/coef.hpp"

namespace pepcert {

/// Exact coefficients print as "p/q"; inexact ones with 10 significant digits.
std::string display(const Coef& c);
std::string display(double x);

/// One term of a signed sum: "x_1" / " − x_0" / " + 20/11·∇f(x_0)". `first`
/// suppresses the leading " + ".
std::string signed_term(const Coef& weight, const std::string& name, bool first);

}  // namespace pepcert
