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

#include "gqnarrow/cbe.h"

#include <algorithm>
#include <cctype>

namespace gqn {

struct Cbe::Node {
  Op op;
  mpq_class factor;
  unsigned long exponent = 0;
  std::shared_ptr<const Node> first;
  std::shared_ptr<const Node> second;
};

namespace {

// Every admitted CBE is x -> c*x (Lawvere family), x -> x^c (fuzzy-product)
// or one of id/const (bool, fuzzy-godel, where c in {0,1}); c = 0 is the
// constant-kappa CBE. compose multiplies coefficients; tensor adds them for
// additive/multiplicative tensors and takes the maximum for idempotent ones.
bool tensor_adds(QuantaleKind kind) {
  return kind == QuantaleKind::kLawvere || kind == QuantaleKind::kFuzzyProduct;
}

}  // namespace

Cbe Cbe::id() {
  static const Cbe kId(std::make_shared<const Node>(Node{Op::kId, 0, 0, {}, {}}));
  return kId;
}

Cbe Cbe::const_kappa() {
  static const Cbe kConst(
      std::make_shared<const Node>(Node{Op::kConstKappa, 0, 0, {}, {}}));
  return kConst;
}

Cbe Cbe::scale(const mpq_class& factor) {
  if (factor < 0) throw QuantaleError("scale factor must be nonnegative");
  mpq_class f = factor;
  f.canonicalize();
  return Cbe(std::make_shared<const Node>(Node{Op::kScale, f, 0, {}, {}}));
}

Cbe Cbe::pow(unsigned long exponent) {
  if (exponent == 0) throw QuantaleError("pow exponent must be at least 1");
  return Cbe(std::make_shared<const Node>(Node{Op::kPow, 0, exponent, {}, {}}));
}

Cbe Cbe::compose(const Cbe& outer, const Cbe& inner) {
  return Cbe(std::make_shared<const Node>(
      Node{Op::kCompose, 0, 0, outer.node_, inner.node_}));
}

Cbe Cbe::tensor(const Cbe& a, const Cbe& b) {
  return Cbe(
      std::make_shared<const Node>(Node{Op::kTensor, 0, 0, a.node_, b.node_}));
}

Cbe Cbe::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text == "id") return id();
  if (text == "const") return const_kappa();
  auto argument_of = [&](std::string_view head) -> std::optional<std::string_view> {
    if (text.size() < head.size() + 2 || text.substr(0, head.size()) != head) return {};
    std::string_view rest = trim(text.substr(head.size()));
    if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')') return {};
    return trim(rest.substr(1, rest.size() - 2));
  };
  if (auto arg = argument_of("scale")) {
    Degree d = Degree::parse(QuantaleKind::kLawvere, *arg);
    if (d.is_infinite()) throw QuantaleError("scale factor must be finite");
    return scale(d.value());
  }
  if (auto arg = argument_of("pow")) {
    const bool digits = !arg->empty() && std::all_of(arg->begin(), arg->end(), [](char c) {
      return c >= '0' && c <= '9';
    });
    if (!digits || arg->size() > 9) {
      throw QuantaleError("malformed pow exponent '" + std::string(*arg) + "'");
    }
    return pow(std::stoul(std::string(*arg)));
  }
  throw QuantaleError("unknown CBE literal '" + std::string(text) + "'");
}

Cbe::Op Cbe::op() const { return node_->op; }
const mpq_class& Cbe::factor() const { return node_->factor; }
unsigned long Cbe::exponent() const { return node_->exponent; }

Cbe Cbe::first() const { return Cbe(node_->first); }
Cbe Cbe::second() const { return Cbe(node_->second); }

std::string Cbe::to_string() const {
  switch (node_->op) {
    case Op::kId:
      return "id";
    case Op::kConstKappa:
      return "const";
    case Op::kScale:
      return "scale(" + node_->factor.get_str() + ")";
    case Op::kPow:
      return "pow(" + std::to_string(node_->exponent) + ")";
    case Op::kCompose:
      return "compose(" + Cbe(node_->first).to_string() + "," +
             Cbe(node_->second).to_string() + ")";
    case Op::kTensor:
      return "tensor(" + Cbe(node_->first).to_string() + "," +
             Cbe(node_->second).to_string() + ")";
  }
  return "?";
}

bool operator==(const Cbe& a, const Cbe& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->op != b.node_->op) return false;
  switch (a.node_->op) {
    case Cbe::Op::kId:
    case Cbe::Op::kConstKappa:
      return true;
    case Cbe::Op::kScale:
      return a.node_->factor == b.node_->factor;
    case Cbe::Op::kPow:
      return a.node_->exponent == b.node_->exponent;
    case Cbe::Op::kCompose:
    case Cbe::Op::kTensor:
      return Cbe(a.node_->first) == Cbe(b.node_->first) &&
             Cbe(a.node_->second) == Cbe(b.node_->second);
  }
  return false;
}

bool admissible(const Cbe& f, QuantaleKind kind) {
  switch (f.op()) {
    case Cbe::Op::kId:
    case Cbe::Op::kConstKappa:
      return true;
    case Cbe::Op::kScale:
      return has_infinity(kind);
    case Cbe::Op::kPow:
      return kind == QuantaleKind::kFuzzyProduct;
    case Cbe::Op::kCompose:
    case Cbe::Op::kTensor: {
      Cbe a = f.first();
      Cbe b = f.second();
      return admissible(a, kind) && admissible(b, kind);
    }
  }
  return false;
}

void require_admissible(const Cbe& f, QuantaleKind kind) {
  if (!admissible(f, kind)) {
    throw QuantaleError("CBE " + f.to_string() + " is not admitted in quantale " +
                        std::string(quantale_name(kind)));
  }
}

Degree cbe_apply(const Cbe& f, const Degree& a) {
  const QuantaleKind kind = a.kind();
  require_admissible(f, kind);
  switch (f.op()) {
    case Cbe::Op::kId:
      return a;
    case Cbe::Op::kConstKappa:
      return Degree::unit(kind);
    case Cbe::Op::kScale:
      if (f.factor() == 0) return Degree::unit(kind);
      if (a.is_infinite()) return a;
      return Degree::of(kind, f.factor() * a.value());
    case Cbe::Op::kPow: {
      mpq_class result(1);
      for (unsigned long i = 0; i < f.exponent(); ++i) result *= a.value();
      return Degree::of(kind, result);
    }
    case Cbe::Op::kCompose: {
      Cbe outer = f.first();
      Cbe inner = f.second();
      return cbe_apply(outer, cbe_apply(inner, a));
    }
    case Cbe::Op::kTensor: {
      Cbe x = f.first();
      Cbe y = f.second();
      return tensor(cbe_apply(x, a), cbe_apply(y, a));
    }
  }
  throw QuantaleError("unknown CBE constructor");
}

namespace {

mpq_class coefficient(const Cbe& f, QuantaleKind kind) {
  switch (f.op()) {
    case Cbe::Op::kId:
      return 1;
    case Cbe::Op::kConstKappa:
      return 0;
    case Cbe::Op::kScale:
      return f.factor();
    case Cbe::Op::kPow:
      return mpq_class(f.exponent());
    case Cbe::Op::kCompose: {
      Cbe a = f.first();
      Cbe b = f.second();
      mpq_class ca = coefficient(a, kind);
      return ca * coefficient(b, kind);
    }
    case Cbe::Op::kTensor: {
      Cbe a = f.first();
      Cbe b = f.second();
      mpq_class ca = coefficient(a, kind);
      mpq_class cb = coefficient(b, kind);
      if (tensor_adds(kind)) return ca + cb;
      return ca < cb ? cb : ca;
    }
  }
  return 0;
}

}  // namespace

Cbe cbe_normalize(const Cbe& f, QuantaleKind kind) {
  require_admissible(f, kind);
  const mpq_class c = coefficient(f, kind);
  if (c == 0) return Cbe::const_kappa();
  switch (kind) {
    case QuantaleKind::kLawvere:
    case QuantaleKind::kLawvereMax:
      return Cbe::scale(c);
    case QuantaleKind::kFuzzyProduct:
      return Cbe::pow(c.get_num().get_ui());
    case QuantaleKind::kBool:
    case QuantaleKind::kFuzzyGodel:
      return Cbe::id();
  }
  return f;
}

Cbe cbe_compose(const Cbe& outer, const Cbe& inner, QuantaleKind kind) {
  return cbe_normalize(Cbe::compose(outer, inner), kind);
}

Cbe cbe_tensor(const Cbe& a, const Cbe& b, QuantaleKind kind) {
  return cbe_normalize(Cbe::tensor(a, b), kind);
}

bool cbe_equal(const Cbe& a, const Cbe& b, QuantaleKind kind) {
  return cbe_normalize(a, kind) == cbe_normalize(b, kind);
}

}  // namespace gqn
