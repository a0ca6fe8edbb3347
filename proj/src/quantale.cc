// Copyright 2026 The gqnarrow Authors.
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

#include "gqnarrow/quantale.h"

#include <algorithm>
#include <array>
#include <utility>

namespace gqn {
namespace {

constexpr std::array<std::pair<QuantaleKind, std::string_view>, 5> kNames = {{
    {QuantaleKind::kBool, "bool"},
    {QuantaleKind::kLawvere, "lawvere"},
    {QuantaleKind::kLawvereMax, "lawvere-max"},
    {QuantaleKind::kFuzzyGodel, "fuzzy-godel"},
    {QuantaleKind::kFuzzyProduct, "fuzzy-product"},
}};

void require_same(const Degree& a, const Degree& b, const char* op) {
  if (a.kind() != b.kind()) {
    throw QuantaleError(std::string(op) + ": mixed quantales (" +
                        std::string(quantale_name(a.kind())) + " vs " +
                        std::string(quantale_name(b.kind())) + ")");
  }
}

bool numeric_carrier_ok(QuantaleKind kind, const mpq_class& v) {
  switch (kind) {
    case QuantaleKind::kBool:
      return v == 0 || v == 1;
    case QuantaleKind::kLawvere:
    case QuantaleKind::kLawvereMax:
      return v >= 0;
    case QuantaleKind::kFuzzyGodel:
    case QuantaleKind::kFuzzyProduct:
      return v >= 0 && v <= 1;
  }
  return false;
}

// Numeric comparison where +inf exceeds every finite value.
int numeric_cmp(const Degree& a, const Degree& b) {
  if (a.is_infinite() || b.is_infinite()) {
    return static_cast<int>(a.is_infinite()) - static_cast<int>(b.is_infinite());
  }
  return cmp(a.value(), b.value()) < 0 ? -1 : (a.value() == b.value() ? 0 : 1);
}

}  // namespace

std::string_view quantale_name(QuantaleKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<QuantaleKind> quantale_from_name(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

bool is_totally_ordered(QuantaleKind) { return true; }

bool has_infinity(QuantaleKind kind) {
  return kind == QuantaleKind::kLawvere || kind == QuantaleKind::kLawvereMax;
}

Degree Degree::of(QuantaleKind kind, const mpq_class& value) {
  mpq_class v = value;
  v.canonicalize();
  if (!numeric_carrier_ok(kind, v)) {
    throw QuantaleError("value " + v.get_str() + " is outside the carrier of " +
                        std::string(quantale_name(kind)));
  }
  return Degree(kind, false, std::move(v));
}

Degree Degree::of(QuantaleKind kind, long numerator, unsigned long denominator) {
  if (denominator == 0) throw QuantaleError("zero denominator");
  mpq_class v(numerator, denominator);
  return of(kind, v);
}

Degree Degree::infinity(QuantaleKind kind) {
  if (!has_infinity(kind)) {
    throw QuantaleError("inf is not in the carrier of " +
                        std::string(quantale_name(kind)));
  }
  return Degree(kind, true, mpq_class(0));
}

Degree Degree::unit(QuantaleKind kind) { return top(kind); }

Degree Degree::top(QuantaleKind kind) {
  return has_infinity(kind) ? of(kind, 0) : of(kind, 1);
}

Degree Degree::bottom(QuantaleKind kind) {
  return has_infinity(kind) ? infinity(kind) : of(kind, 0);
}

Degree Degree::parse(QuantaleKind kind, std::string_view text) {
  if (text == "inf") return infinity(kind);
  if (text.empty()) throw QuantaleError("empty degree literal");
  auto slash = text.find('/');
  auto digits = [](std::string_view s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string_view num = text.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!digits(num) || !digits(den)) {
    throw QuantaleError("malformed degree literal '" + std::string(text) + "'");
  }
  mpz_class n{std::string(num)}, d{std::string(den)};
  if (d == 0) throw QuantaleError("zero denominator in '" + std::string(text) + "'");
  return of(kind, mpq_class(n, d));
}

std::string Degree::to_string() const {
  if (infinite_) return "inf";
  return value_.get_str();
}

bool operator==(const Degree& a, const Degree& b) {
  return a.kind_ == b.kind_ && a.infinite_ == b.infinite_ &&
         (a.infinite_ || a.value_ == b.value_);
}

Degree tensor(const Degree& a, const Degree& b) {
  require_same(a, b, "tensor");
  const QuantaleKind kind = a.kind();
  switch (kind) {
    case QuantaleKind::kBool:
    case QuantaleKind::kFuzzyProduct:
      return Degree::of(kind, a.value() * b.value());
    case QuantaleKind::kLawvere:
      if (a.is_infinite() || b.is_infinite()) return Degree::infinity(kind);
      return Degree::of(kind, a.value() + b.value());
    case QuantaleKind::kLawvereMax:
      return numeric_cmp(a, b) >= 0 ? a : b;
    case QuantaleKind::kFuzzyGodel:
      return numeric_cmp(a, b) <= 0 ? a : b;
  }
  throw QuantaleError("unknown quantale");
}

bool leq(const Degree& a, const Degree& b) {
  require_same(a, b, "leq");
  const int c = numeric_cmp(a, b);
  return has_infinity(a.kind()) ? c >= 0 : c <= 0;
}

Degree join(const Degree& a, const Degree& b) { return leq(a, b) ? b : a; }

Degree meet(const Degree& a, const Degree& b) { return leq(a, b) ? a : b; }

Degree join(QuantaleKind kind, std::span<const Degree> values) {
  Degree acc = Degree::bottom(kind);
  for (const Degree& v : values) acc = join(acc, v);
  return acc;
}

Degree meet(QuantaleKind kind, std::span<const Degree> values) {
  Degree acc = Degree::top(kind);
  for (const Degree& v : values) acc = meet(acc, v);
  return acc;
}

}  // namespace gqn
