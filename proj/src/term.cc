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

#include "gqnarrow/term.h"

#include <algorithm>
#include <sstream>
#include <utility>

#include "gqnarrow/error.h"

namespace gqn {

struct Term::Node {
  bool is_var = false;
  Var var;
  std::string symbol;
  std::vector<Term> args;
  std::size_t hash = 0;
  std::size_t size = 1;
  std::size_t depth = 1;
  bool ground = true;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

std::string Var::to_string() const {
  if (index == 0) return name;
  return name + "_" + std::to_string(index);
}

Term Term::var(Var v) {
  auto node = std::make_shared<Node>();
  node->is_var = true;
  node->hash = mix(mix(0x51ed, std::hash<std::string>{}(v.name)), std::hash<int>{}(v.index));
  node->ground = false;
  node->var = std::move(v);
  return Term(std::move(node));
}

Term Term::var(std::string name, int index) { return var(Var{std::move(name), index}); }

Term Term::app(std::string symbol, std::vector<Term> args) {
  auto node = std::make_shared<Node>();
  std::size_t h = mix(0xa11, std::hash<std::string>{}(symbol));
  std::size_t depth = 0;
  for (const Term& a : args) {
    h = mix(h, a.node_->hash);
    node->size += a.node_->size;
    depth = std::max(depth, a.node_->depth);
    node->ground = node->ground && a.node_->ground;
  }
  node->depth = depth + 1;
  node->hash = h;
  node->symbol = std::move(symbol);
  node->args = std::move(args);
  return Term(std::move(node));
}

bool Term::is_var() const { return node_->is_var; }

const Var& Term::as_var() const {
  if (!node_->is_var) throw TermError("term " + to_string() + " is not a variable");
  return node_->var;
}

const std::string& Term::symbol() const { return node_->symbol; }
std::span<const Term> Term::args() const { return node_->args; }
std::size_t Term::hash() const { return node_->hash; }
std::size_t Term::size() const { return node_->size; }
std::size_t Term::depth() const { return node_->depth; }
bool Term::is_ground() const { return node_->ground; }

std::string Term::to_string() const {
  if (node_->is_var) return node_->var.to_string();
  if (node_->args.empty()) return node_->symbol;
  std::string out = node_->symbol + "(";
  for (std::size_t i = 0; i < node_->args.size(); ++i) {
    if (i > 0) out += ",";
    out += node_->args[i].to_string();
  }
  out += ")";
  return out;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->size != b.node_->size) return false;
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const Term::Node& x = *a.node_;
  const Term::Node& y = *b.node_;
  if (x.is_var != y.is_var) return x.is_var ? std::strong_ordering::less : std::strong_ordering::greater;
  if (x.is_var) return x.var <=> y.var;
  if (auto c = x.symbol <=> y.symbol; c != 0) return c;
  if (auto c = x.args.size() <=> y.args.size(); c != 0) return c;
  for (std::size_t i = 0; i < x.args.size(); ++i) {
    if (auto c = x.args[i] <=> y.args[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Position::Position(std::vector<int> steps) : steps_(std::move(steps)) {
  for (int s : steps_) {
    if (s < 1) throw TermError("position indices are 1-based");
  }
}

Position Position::parse(std::string_view text) {
  if (text == "^" || text.empty()) return Position();
  std::vector<int> steps;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t dot = text.find('.', start);
    std::string_view part = text.substr(start, dot == std::string_view::npos ? text.npos : dot - start);
    if (part.empty() || part.size() > 6 ||
        !std::all_of(part.begin(), part.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw TermError("malformed position '" + std::string(text) + "'");
    }
    steps.push_back(std::stoi(std::string(part)));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return Position(std::move(steps));
}

Position Position::child(int index) const {
  Position p = *this;
  if (index < 1) throw TermError("position indices are 1-based");
  p.steps_.push_back(index);
  return p;
}

Position Position::concat(const Position& suffix) const {
  Position p = *this;
  p.steps_.insert(p.steps_.end(), suffix.steps_.begin(), suffix.steps_.end());
  return p;
}

bool Position::is_prefix_of(const Position& other) const {
  return steps_.size() <= other.steps_.size() &&
         std::equal(steps_.begin(), steps_.end(), other.steps_.begin());
}

std::string Position::to_string() const {
  if (steps_.empty()) return "^";
  std::string out;
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    if (i > 0) out += ".";
    out += std::to_string(steps_[i]);
  }
  return out;
}

namespace {

enum class Which { kAll, kFun, kVar };

void collect(const Term& t, std::vector<int>& path, Which which, std::vector<Position>& out) {
  const bool take = which == Which::kAll || (which == Which::kVar) == t.is_var();
  if (take) out.emplace_back(path);
  for (std::size_t i = 0; i < t.arity(); ++i) {
    path.push_back(static_cast<int>(i) + 1);
    collect(t.args()[i], path, which, out);
    path.pop_back();
  }
}

std::vector<Position> collect(const Term& t, Which which) {
  std::vector<Position> out;
  std::vector<int> path;
  collect(t, path, which, out);
  return out;
}

}  // namespace

std::vector<Position> positions(const Term& t) { return collect(t, Which::kAll); }
std::vector<Position> fun_positions(const Term& t) { return collect(t, Which::kFun); }
std::vector<Position> var_positions(const Term& t) { return collect(t, Which::kVar); }

bool is_valid_position(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (int step : p.steps()) {
    if (cur->is_var() || step > static_cast<int>(cur->arity())) return false;
    cur = &cur->args()[step - 1];
  }
  return true;
}

Term subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (int step : p.steps()) {
    if (cur->is_var() || step > static_cast<int>(cur->arity())) {
      throw TermError("position " + p.to_string() + " is not valid in " + t.to_string());
    }
    cur = &cur->args()[step - 1];
  }
  return *cur;
}

namespace {

Term replace_from(const Term& t, const std::vector<int>& steps, std::size_t depth, const Term& s,
                  const Position& p, const Term& whole) {
  if (depth == steps.size()) return s;
  const int step = steps[depth];
  if (t.is_var() || step > static_cast<int>(t.arity())) {
    throw TermError("position " + p.to_string() + " is not valid in " + whole.to_string());
  }
  std::vector<Term> args(t.args().begin(), t.args().end());
  args[step - 1] = replace_from(args[step - 1], steps, depth + 1, s, p, whole);
  return Term::app(t.symbol(), std::move(args));
}

void collect_vars(const Term& t, std::vector<Var>& out, std::set<Var>& seen) {
  if (t.is_ground()) return;
  if (t.is_var()) {
    if (seen.insert(t.as_var()).second) out.push_back(t.as_var());
    return;
  }
  for (const Term& a : t.args()) collect_vars(a, out, seen);
}

bool linear_walk(const Term& t, std::set<Var>& seen) {
  if (t.is_ground()) return true;
  if (t.is_var()) return seen.insert(t.as_var()).second;
  for (const Term& a : t.args()) {
    if (!linear_walk(a, seen)) return false;
  }
  return true;
}

}  // namespace

Term replace_at(const Term& t, const Position& p, const Term& s) {
  return replace_from(t, p.steps(), 0, s, p, t);
}

std::set<Var> vars(const Term& t) {
  std::vector<Var> order;
  std::set<Var> seen;
  collect_vars(t, order, seen);
  return seen;
}

std::vector<Var> vars_in_order(const Term& t) {
  std::vector<Var> order;
  std::set<Var> seen;
  collect_vars(t, order, seen);
  return order;
}

bool occurs(const Var& x, const Term& t) {
  if (t.is_ground()) return false;
  if (t.is_var()) return t.as_var() == x;
  return std::any_of(t.args().begin(), t.args().end(),
                     [&](const Term& a) { return occurs(x, a); });
}

bool is_linear(const Term& t) {
  std::set<Var> seen;
  return linear_walk(t, seen);
}

void Signature::declare(const std::string& symbol, std::vector<Cbe> arity) {
  if (symbol == kEqSymbol || symbol == kTrueSymbol) {
    throw TermError("'" + symbol + "' is a reserved symbol");
  }
  if (symbols_.count(symbol) != 0) throw TermError("symbol '" + symbol + "' declared twice");
  for (const Cbe& f : arity) require_admissible(f, kind_);
  symbols_.emplace(symbol, std::move(arity));
}

bool Signature::contains(const std::string& symbol) const { return symbols_.count(symbol) != 0; }

const std::vector<Cbe>& Signature::arity(const std::string& symbol) const {
  auto it = symbols_.find(symbol);
  if (it == symbols_.end()) throw TermError("unknown symbol '" + symbol + "'");
  return it->second;
}

Signature Signature::extended() const {
  if (is_extended()) throw RuleError("signature already contains '=?' and 'true'");
  Signature out = *this;
  out.symbols_.emplace(std::string(kEqSymbol), std::vector<Cbe>{Cbe::id(), Cbe::id()});
  out.symbols_.emplace(std::string(kTrueSymbol), std::vector<Cbe>{});
  return out;
}

bool Signature::is_extended() const {
  return symbols_.count(std::string(kEqSymbol)) != 0 ||
         symbols_.count(std::string(kTrueSymbol)) != 0;
}

void Signature::check_term(const Term& t) const {
  if (t.is_var()) {
    if (t.as_var().index < 0) throw TermError("negative variable index");
    return;
  }
  const auto& ar = arity(t.symbol());
  if (ar.size() != t.arity()) {
    throw TermError("symbol '" + t.symbol() + "' expects " + std::to_string(ar.size()) +
                    " arguments, got " + std::to_string(t.arity()));
  }
  for (const Term& a : t.args()) check_term(a);
}

Cbe grade_of_position(const Signature& sig, const Term& t, const Position& p) {
  // Collect the modal arities along the path, then compose outermost first.
  std::vector<Cbe> chain;
  const Term* cur = &t;
  for (int step : p.steps()) {
    if (cur->is_var() || step > static_cast<int>(cur->arity())) {
      throw TermError("position " + p.to_string() + " is not valid in " + t.to_string());
    }
    chain.push_back(sig.arity(cur->symbol()).at(step - 1));
    cur = &cur->args()[step - 1];
  }
  Cbe grade = Cbe::id();
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    grade = cbe_compose(*it, grade, sig.kind());
  }
  return cbe_normalize(grade, sig.kind());
}

Cbe grade_of_var(const Signature& sig, const Term& t, const Var& x) {
  std::optional<Cbe> acc;
  for (const Position& p : var_positions(t)) {
    if (subterm_at(t, p).as_var() != x) continue;
    Cbe g = grade_of_position(sig, t, p);
    acc = acc ? cbe_tensor(*acc, g, sig.kind()) : g;
  }
  return acc ? *acc : Cbe::const_kappa();
}

Term apply_bindings(const Term& t, const Bindings& bindings) {
  if (t.is_ground() || bindings.empty()) return t;
  if (t.is_var()) {
    auto it = bindings.find(t.as_var());
    return it == bindings.end() ? t : it->second;
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  bool changed = false;
  for (const Term& a : t.args()) {
    args.push_back(apply_bindings(a, bindings));
    changed = changed || !(args.back() == a);
  }
  if (!changed) return t;
  return Term::app(t.symbol(), std::move(args));
}

Substitution Substitution::from_bindings(Bindings bindings) {
  for (auto it = bindings.begin(); it != bindings.end();) {
    if (it->second.is_var() && it->second.as_var() == it->first) {
      it = bindings.erase(it);
    } else {
      ++it;
    }
  }
  for (const auto& [x, t] : bindings) {
    for (const Var& y : vars(t)) {
      if (bindings.count(y) != 0) {
        throw SubstitutionError("substitution is not idempotent: " + y.to_string() +
                                " occurs in the range and the domain");
      }
    }
  }
  return Substitution(std::move(bindings));
}

const Term* Substitution::lookup(const Var& x) const {
  auto it = bindings_.find(x);
  return it == bindings_.end() ? nullptr : &it->second;
}

std::set<Var> Substitution::domain() const {
  std::set<Var> out;
  for (const auto& [x, t] : bindings_) out.insert(x);
  return out;
}

std::set<Var> Substitution::range_vars() const {
  std::set<Var> out;
  for (const auto& [x, t] : bindings_) {
    for (const Var& y : vars(t)) out.insert(y);
  }
  return out;
}

Substitution Substitution::restrict_to(const std::set<Var>& keep) const {
  Bindings out;
  for (const auto& [x, t] : bindings_) {
    if (keep.count(x) != 0) out.emplace(x, t);
  }
  return Substitution(std::move(out));
}

std::string Substitution::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [x, t] : bindings_) {
    if (!first) out += ", ";
    first = false;
    out += x.to_string() + " -> " + t.to_string();
  }
  return out + "}";
}

Term apply_subst(const Term& t, const Substitution& sigma) {
  return apply_bindings(t, sigma.bindings());
}

Substitution compose_subst(const Substitution& sigma, const Substitution& rho) {
  Bindings out;
  for (const auto& [x, t] : sigma.bindings()) out.emplace(x, apply_subst(t, rho));
  for (const auto& [y, t] : rho.bindings()) out.emplace(y, t);  // keeps sigma's entry
  return Substitution::from_bindings(std::move(out));
}

Term rename_vars(const Term& t, int index) {
  if (t.is_ground()) return t;
  if (t.is_var()) return Term::var(t.as_var().name, index);
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(rename_vars(a, index));
  return Term::app(t.symbol(), std::move(args));
}

Term fresh_variant(const Term& t, FreshVariables& fresh) {
  return rename_vars(t, fresh.issue());
}

}  // namespace gqn
