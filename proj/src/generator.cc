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

#include "gqnarrow/generator.h"

#include <algorithm>
#include <functional>

#include "gqnarrow/cbe.h"
#include "gqnarrow/error.h"

namespace gqn {
namespace {

template <typename T>
const T& pick(const std::vector<T>& items, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> d(0, items.size() - 1);
  return items[d(rng)];
}

bool coin(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::vector<std::string> user_symbols(const Signature& sig, bool constants) {
  std::vector<std::string> out;
  for (const auto& [name, arity] : sig.symbols()) {
    if (name == kEqSymbol || name == kTrueSymbol) continue;
    if (arity.empty() == constants) out.push_back(name);
  }
  return out;
}

Signature random_signature(const GeneratorConfig& config, std::mt19937_64& rng) {
  static const char* kConstants[] = {"a", "b", "c", "d", "e"};
  static const char* kFunctions[] = {"f", "g", "h", "k", "m"};
  Signature sig(config.kind);
  const std::size_t n =
      std::uniform_int_distribution<std::size_t>(2, std::max<std::size_t>(2, config.max_symbols))(
          rng);
  std::size_t constants = 0;
  std::size_t functions = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t arity = 0;
    if (i > 0 && config.max_arity > 0) {
      arity = std::uniform_int_distribution<std::size_t>(0, config.max_arity)(rng);
    }
    if (i == n - 1 && functions == 0 && config.max_arity > 0) arity = 1;
    if (arity == 0 && constants == 5) arity = 1;
    if (arity > 0 && functions == 5) arity = 0;
    std::vector<Cbe> slots;
    for (std::size_t j = 0; j < arity; ++j) {
      slots.push_back(config.graded_arities ? random_cbe(config.kind, rng) : Cbe::id());
    }
    sig.declare(arity == 0 ? kConstants[constants++] : kFunctions[functions++], std::move(slots));
  }
  return sig;
}

std::optional<RewriteRule> random_rule(const GeneratorConfig& config, const Signature& sig,
                                       std::mt19937_64& rng) {
  static const std::vector<Var> kRuleVars = {Var{"x", 0}, Var{"y", 0}};
  const std::size_t depth = std::max<std::size_t>(1, config.max_term_depth);
  Term lhs = random_term(sig, kRuleVars, depth, rng);
  if (lhs.is_var()) return std::nullopt;
  const std::set<Var> lv = vars(lhs);
  std::vector<Var> allowed;
  if (!config.require_right_ground) allowed.assign(lv.begin(), lv.end());
  Term rhs = random_term(sig, allowed, depth, rng);
  if (config.require_right_linear && !is_linear(rhs)) return std::nullopt;
  RewriteRule rule{random_degree(config.kind, rng), lhs, rhs};
  if (config.require_balanced && !rule_attributes(sig, rule).balanced) return std::nullopt;
  return rule;
}

}  // namespace

Degree random_degree(QuantaleKind kind, std::mt19937_64& rng) {
  switch (kind) {
    case QuantaleKind::kBool:
      return Degree::of(kind, coin(rng, 0.8) ? 1 : 0);
    case QuantaleKind::kLawvere:
    case QuantaleKind::kLawvereMax: {
      static const std::vector<std::pair<long, unsigned long>> kValues = {
          {0, 1}, {1, 1}, {1, 1}, {2, 1}, {3, 1}, {1, 2}};
      const auto& [n, d] = pick(kValues, rng);
      return Degree::of(kind, n, d);
    }
    case QuantaleKind::kFuzzyGodel:
    case QuantaleKind::kFuzzyProduct: {
      static const std::vector<std::pair<long, unsigned long>> kValues = {
          {1, 1}, {1, 2}, {1, 4}, {3, 4}, {1, 1}, {2, 3}};
      const auto& [n, d] = pick(kValues, rng);
      return Degree::of(kind, n, d);
    }
  }
  return Degree::unit(kind);
}

Cbe random_cbe(QuantaleKind kind, std::mt19937_64& rng) {
  std::vector<Cbe> choices = {Cbe::id(), Cbe::id(), Cbe::const_kappa()};
  switch (kind) {
    case QuantaleKind::kLawvere:
    case QuantaleKind::kLawvereMax:
      choices.push_back(Cbe::scale(2));
      choices.push_back(Cbe::scale(3));
      choices.push_back(Cbe::scale(mpq_class(1, 2)));
      break;
    case QuantaleKind::kFuzzyProduct:
      choices.push_back(Cbe::pow(2));
      choices.push_back(Cbe::pow(3));
      break;
    default:
      break;
  }
  std::erase_if(choices, [&](const Cbe& c) { return !admissible(c, kind); });
  return pick(choices, rng);
}

Term random_term(const Signature& sig, const std::vector<Var>& variables, std::size_t max_depth,
                 std::mt19937_64& rng) {
  const std::vector<std::string> constants = user_symbols(sig, true);
  const std::vector<std::string> functions = user_symbols(sig, false);
  if (constants.empty() && variables.empty()) throw TermError("no leaves to build terms from");
  std::function<Term(std::size_t)> build = [&](std::size_t depth) -> Term {
    const bool leaf = depth <= 1 || functions.empty() || coin(rng, 0.35);
    if (leaf) {
      if (!variables.empty() && (constants.empty() || coin(rng, 0.5))) {
        return Term::var(pick(variables, rng));
      }
      return Term::app(pick(constants, rng));
    }
    const std::string& f = pick(functions, rng);
    std::vector<Term> args;
    for (std::size_t i = 0; i < sig.arity(f).size(); ++i) args.push_back(build(depth - 1));
    return Term::app(f, std::move(args));
  };
  return build(max_depth);
}

std::vector<Term> ground_terms(const Signature& sig, std::size_t max_depth, std::size_t limit) {
  std::vector<Term> out;
  std::vector<std::pair<std::string, std::size_t>> symbols;
  for (const auto& [name, arity] : sig.symbols()) {
    if (name == kEqSymbol || name == kTrueSymbol) continue;
    symbols.emplace_back(name, arity.size());
  }
  for (const auto& [name, n] : symbols) {
    if (n == 0 && out.size() < limit) out.push_back(Term::app(name));
  }
  std::size_t previous = 0;
  for (std::size_t depth = 2; depth <= max_depth && out.size() < limit; ++depth) {
    const std::vector<Term> smaller = out;
    for (const auto& [name, n] : symbols) {
      if (n == 0) continue;
      // Argument tuples over smaller terms with at least one of the newest
      // depth, so every term is produced once.
      std::vector<std::size_t> idx(n, 0);
      while (out.size() < limit) {
        bool fresh = false;
        std::vector<Term> args;
        for (std::size_t i : idx) {
          args.push_back(smaller[i]);
          fresh = fresh || i >= previous;
        }
        if (fresh) out.push_back(Term::app(name, std::move(args)));
        std::size_t k = 0;
        while (k < n && ++idx[k] == smaller.size()) idx[k++] = 0;
        if (k == n) break;
      }
    }
    previous = smaller.size();
  }
  return out;
}

GeneratedProblem generate_problem(const GeneratorConfig& config, std::mt19937_64& rng) {
  static const std::vector<Var> kProblemVars = {Var{"x", 0}, Var{"y", 0}};
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Signature sig = random_signature(config, rng);
    const std::size_t n =
        std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, config.max_rules))(
            rng);
    std::vector<RewriteRule> rules;
    for (int tries = 0; rules.size() < n && tries < 200; ++tries) {
      if (auto r = random_rule(config, sig, rng)) rules.push_back(std::move(*r));
    }
    if (rules.size() < n) continue;
    const std::size_t depth = std::max<std::size_t>(1, config.max_term_depth);
    Term t = random_term(sig, kProblemVars, depth, rng);
    Term s = random_term(sig, kProblemVars, depth, rng);
    if (config.linear_problem && !is_linear(Term::app(std::string(kEqSymbol), {t, s}))) continue;
    return GeneratedProblem{GradedTrs(std::move(sig), std::move(rules)), std::move(t), std::move(s)};
  }
  throw RuleError("generator gates could not be met");
}

}  // namespace gqn
