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

#include "pepcert/coef.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <system_error>

namespace pepcert {

namespace {

mpq_class pow10(int exponent) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(exponent)));
  if (exponent >= 0) return mpq_class(p);
  return mpq_class(mpz_class(1), p);
}

// Parses an optionally signed decimal with optional fraction and exponent.
mpq_class parse_decimal(std::string_view s) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) negative = s[pos++] == '-';
  std::string digits;
  int scale = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < s.size(); ++pos) {
    const char ch = s[pos];
    if (ch >= '0' && ch <= '9') {
      digits.push_back(ch);
      seen_digit = true;
      if (seen_point) --scale;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') {
      throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    }
    ++pos;
    int exponent = 0;
    const char* first = s.data() + pos;
    const char* last = s.data() + s.size();
    if (first < last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (ec != std::errc() || ptr != last) {
      throw std::invalid_argument("bad exponent in '" + std::string(s) + "'");
    }
    scale += exponent;
  }
  mpq_class q{mpz_class(digits, 10)};
  q *= pow10(scale);
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

}  // namespace

std::string shortest_decimal(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("to_chars failed");
  return std::string(buf, ptr);
}

Coef Coef::exact(const mpq_class& q) {
  Coef c;
  c.q_ = q;
  c.q_.canonicalize();
  return c;
}

Coef Coef::ratio(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  return exact(mpq_class(num, den));
}

Coef Coef::real(double value) {
  Coef c;
  if (value == 0.0) return c;
  c.exact_ = false;
  c.q_ = 0;
  c.d_ = value;
  return c;
}

Coef Coef::from_decimal(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite coefficient");
  return exact(parse_decimal(shortest_decimal(value)));
}

Coef Coef::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return exact(parse_decimal(text));
  const mpq_class num = parse_decimal(text.substr(0, slash));
  const mpq_class den = parse_decimal(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return exact(num / den);
}

bool Coef::is_zero() const { return exact_ ? q_ == 0 : d_ == 0.0; }

double Coef::to_double() const { return exact_ ? q_.get_d() : d_; }

const mpq_class& Coef::rational() const {
  if (!exact_) throw std::logic_error("coefficient is not exact");
  return q_;
}

std::string Coef::str() const {
  if (!exact_) return shortest_decimal(d_);
  return q_.get_str();
}

Coef Coef::operator-() const {
  Coef c = *this;
  if (exact_) {
    c.q_ = -q_;
  } else {
    c.d_ = -d_;
  }
  return c;
}

Coef& Coef::operator+=(const Coef& o) {
  if (exact_ && o.exact_) {
    q_ += o.q_;
  } else {
    *this = real(to_double() + o.to_double());
  }
  return *this;
}

Coef& Coef::operator-=(const Coef& o) { return *this += -o; }

Coef& Coef::operator*=(const Coef& o) {
  if (is_zero() || o.is_zero()) {
    *this = Coef();
  } else if (exact_ && o.exact_) {
    q_ *= o.q_;
  } else {
    *this = real(to_double() * o.to_double());
  }
  return *this;
}

Coef& Coef::operator/=(const Coef& o) {
  if (o.is_zero()) throw std::domain_error("division by zero coefficient");
  if (is_zero()) return *this;
  if (exact_ && o.exact_) {
    q_ /= o.q_;
  } else {
    *this = real(to_double() / o.to_double());
  }
  return *this;
}

bool operator==(const Coef& a, const Coef& b) {
  if (a.exact_ && b.exact_) return a.q_ == b.q_;
  return a.to_double() == b.to_double();
}

std::partial_ordering operator<=>(const Coef& a, const Coef& b) {
  if (a.exact_ && b.exact_) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  return a.to_double() <=> b.to_double();
}

Coef sqrt(const Coef& c) {
  if (c < Coef(0)) throw std::domain_error("square root of a negative coefficient");
  if (c.is_exact()) {
    const mpq_class& q = c.rational();
    if (mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t())) {
      mpz_class num = sqrt(mpz_class(q.get_num()));
      mpz_class den = sqrt(mpz_class(q.get_den()));
      return Coef::exact(mpq_class(num, den));
    }
  }
  return Coef::real(std::sqrt(c.to_double()));
}

Coef abs(const Coef& c) { return c < Coef(0) ? -c : c; }

std::ostream& operator<<(std::ostream& os, const Coef& c) { return os << c.str(); }

}  // namespace pepcert
