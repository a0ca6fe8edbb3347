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

#include "gqnarrow/rewrite.h"

#include <algorithm>
#include <unordered_map>

#include "gqnarrow/error.h"
#include "gqnarrow/unify.h"

namespace gqn {

std::string RewriteRule::to_string() const {
  return degree.to_string() + " : " + lhs.to_string() + " -> " + rhs.to_string();
}

RewriteRule rename_rule(const RewriteRule& rule, int index) {
  return RewriteRule{rule.degree, rename_vars(rule.lhs, index), rename_vars(rule.rhs, index)};
}

RewriteRule fresh_variant(const RewriteRule& rule, FreshVariables& fresh) {
  return rename_rule(rule, fresh.issue());
}

RuleAttributes rule_attributes(const Signature& sig, const RewriteRule& rule) {
  RuleAttributes a;
  a.left_linear = is_linear(rule.lhs);
  a.right_linear = is_linear(rule.rhs);
  a.left_ground = rule.lhs.is_ground();
  a.right_ground = rule.rhs.is_ground();
  std::set<Var> all = vars(rule.lhs);
  for (const Var& x : vars(rule.rhs)) all.insert(x);
  for (const Var& x : all) {
    if (!cbe_equal(grade_of_var(sig, rule.lhs, x), grade_of_var(sig, rule.rhs, x), sig.kind())) {
      a.unbalanced_vars.push_back(x);
    }
  }
  a.balanced = a.unbalanced_vars.empty();
  return a;
}

GradedTrs::GradedTrs(Signature signature, std::vector<RewriteRule> rules, bool declared_confluent)
    : signature_(std::move(signature)), rules_(std::move(rules)) {
  attributes_.declared_confluent = declared_confluent;
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const RewriteRule& r = rules_[i];
    const std::string where = "rule " + std::to_string(i + 1) + " (" + r.to_string() + ")";
    if (r.degree.kind() != signature_.kind()) {
      throw RuleError(where + ": degree from quantale " +
                      std::string(quantale_name(r.degree.kind())));
    }
    if (r.lhs.is_var()) throw RuleError(where + ": left-hand side is a variable");
    const std::set<Var> lhs_vars = vars(r.lhs);
    for (const Var& x : vars(r.rhs)) {
      if (lhs_vars.count(x) == 0) {
        throw RuleError(where + ": variable " + x.to_string() +
                        " of the right-hand side does not occur on the left");
      }
    }
    signature_.check_term(r.lhs);
    signature_.check_term(r.rhs);
    RuleAttributes a = rule_attributes(signature_, r);
    attributes_.left_linear = attributes_.left_linear && a.left_linear;
    attributes_.right_linear = attributes_.right_linear && a.right_linear;
    attributes_.left_ground = attributes_.left_ground && a.left_ground;
    attributes_.right_ground = attributes_.right_ground && a.right_ground;
    attributes_.balanced = attributes_.balanced && a.balanced;
    attributes_.rules.push_back(std::move(a));
  }
}

TrsAttributes check_trs(const GradedTrs& trs) { return trs.attributes(); }

GradedTrs extend_trs(const GradedTrs& trs) {
  if (trs.is_extended()) throw RuleError("rewrite system is already extended");
  Signature sig = trs.signature().extended();
  std::vector<RewriteRule> rules = trs.rules();
  const Term x = Term::var("x");
  rules.push_back(RewriteRule{Degree::unit(trs.kind()),
                              Term::app(std::string(kEqSymbol), {x, x}),
                              Term::app(std::string(kTrueSymbol))});
  return GradedTrs(std::move(sig), std::move(rules), trs.declared_confluent());
}

std::vector<RewriteStep> rewrite_steps(const GradedTrs& trs, const Term& s) {
  std::vector<RewriteStep> out;
  const auto& rules = trs.rules();
  for (const Position& p : fun_positions(s)) {
    const Term redex = subterm_at(s, p);
    std::optional<Cbe> grade;
    for (std::size_t i = 0; i < rules.size(); ++i) {
      const RewriteRule& rule = rules[i];
      if (rule.lhs.symbol() != redex.symbol()) continue;
      auto m = match(rule.lhs, redex);
      if (!m) continue;
      if (!grade) grade = grade_of_position(trs.signature(), s, p);
      Degree degree = cbe_apply(*grade, rule.degree);
      Term result = replace_at(s, p, apply_bindings(rule.rhs, *m));
      out.push_back(RewriteStep{p, i, std::move(*m), std::move(degree), std::move(result)});
    }
  }
  return out;
}

std::vector<RewriteStep> innermost_rewrite_steps(const GradedTrs& trs, const Term& s) {
  std::vector<RewriteStep> all = rewrite_steps(trs, s);
  std::vector<RewriteStep> out;
  for (const RewriteStep& step : all) {
    const bool has_inner = std::any_of(all.begin(), all.end(), [&](const RewriteStep& other) {
      return other.position != step.position && step.position.is_prefix_of(other.position);
    });
    if (!has_inner) out.push_back(step);
  }
  return out;
}

std::string render_trace(const RewriteTrace& trace) {
  std::string out;
  for (const TraceStep& ts : trace) {
    const Term redex = subterm_at(ts.source, ts.step.position);
    const Term contractum = subterm_at(ts.step.result, ts.step.position);
    out += ts.step.position.to_string() + ": " + redex.to_string() + " -> " +
           contractum.to_string() + "  @ " + ts.step.degree.to_string() + "\n";
  }
  return out;
}

namespace {

struct Label {
  Degree degree;
  std::size_t depth;
  RewriteTrace trace;
  bool alive = true;
};

}  // namespace

std::vector<ReachedTerm> rewrite_search(const GradedTrs& trs, const Term& t,
                                        const RewriteSearchOptions& options) {
  std::unordered_map<Term, std::vector<Label>, TermHash> labels;
  labels[t].push_back(Label{Degree::unit(trs.kind()), 0, {}});
  std::vector<std::pair<Term, std::size_t>> frontier{{t, 0}};

  for (std::size_t depth = 0; depth < options.max_steps && !frontier.empty(); ++depth) {
    std::vector<std::pair<Term, std::size_t>> next;
    for (const auto& [term, index] : frontier) {
      if (!labels[term][index].alive) continue;
      const Degree base = labels[term][index].degree;
      const RewriteTrace base_trace = labels[term][index].trace;
      std::vector<RewriteStep> steps =
          options.innermost ? innermost_rewrite_steps(trs, term) : rewrite_steps(trs, term);
      for (RewriteStep& step : steps) {
        Degree d = tensor(base, step.degree);
        if (options.threshold && !geq(d, *options.threshold)) continue;
        auto& existing = labels[step.result];
        const bool dominated = std::any_of(existing.begin(), existing.end(), [&](const Label& l) {
          return l.alive && geq(l.degree, d);
        });
        if (dominated) continue;
        if (existing.empty() && labels.size() > options.max_terms) continue;
        for (Label& l : existing) {
          if (l.alive && l.depth >= depth + 1 && leq(l.degree, d)) l.alive = false;
        }
        RewriteTrace trace = base_trace;
        Term result = step.result;
        trace.push_back(TraceStep{term, std::move(step)});
        existing.push_back(Label{d, depth + 1, std::move(trace)});
        next.emplace_back(result, existing.size() - 1);
      }
    }
    frontier = std::move(next);
  }

  std::vector<ReachedTerm> out;
  for (auto& [term, ls] : labels) {
    ReachedTerm r{term, {}, {}};
    for (Label& l : ls) {
      if (!l.alive) continue;
      const bool beaten = std::any_of(ls.begin(), ls.end(), [&](const Label& o) {
        return o.alive && better(o.degree, l.degree);
      });
      const bool duplicate = std::any_of(r.degrees.begin(), r.degrees.end(),
                                         [&](const Degree& d) { return d == l.degree; });
      if (beaten || duplicate) continue;
      r.degrees.push_back(l.degree);
      r.traces.push_back(std::move(l.trace));
    }
    if (!r.degrees.empty()) out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(),
            [](const ReachedTerm& a, const ReachedTerm& b) { return a.term < b.term; });
  return out;
}

std::optional<Joinability> joinable(const GradedTrs& trs, const Term& t, const Term& s,
                                    std::size_t max_steps) {
  const GradedTrs extended = trs.is_extended() ? trs : extend_trs(trs);
  const Term start = Term::app(std::string(kEqSymbol), {t, s});
  const Term goal = Term::app(std::string(kTrueSymbol));
  RewriteSearchOptions options;
  options.max_steps = max_steps;
  for (ReachedTerm& r : rewrite_search(extended, start, options)) {
    if (r.term == goal) return Joinability{r.degrees.front(), std::move(r.traces.front())};
  }
  return std::nullopt;
}

}  // namespace gqn
