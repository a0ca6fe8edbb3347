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

#include "gqnarrow/oracle.h"

#include <algorithm>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "gqnarrow/error.h"
#include "gqnarrow/narrow.h"

namespace gqn {
namespace {

// Syntactic matching of a pattern against a ground subject.
bool ground_match(const Term& pattern, const Term& subject, Bindings& out) {
  if (pattern.is_var()) {
    auto [it, inserted] = out.emplace(pattern.as_var(), subject);
    return inserted || it->second == subject;
  }
  if (subject.is_var() || pattern.symbol() != subject.symbol() ||
      pattern.arity() != subject.arity()) {
    return false;
  }
  for (std::size_t i = 0; i < pattern.arity(); ++i) {
    if (!ground_match(pattern.args()[i], subject.args()[i], out)) return false;
  }
  return true;
}

Term instantiate(const Term& t, const Bindings& b) {
  if (t.is_var()) return b.at(t.as_var());
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(instantiate(a, b));
  return Term::app(t.symbol(), std::move(args));
}

// The arity slots on the way from the root of s down to p, applied to a
// from the innermost slot outwards.
Degree graded_at(const Signature& sig, const Term& s, const Position& p, const Degree& a) {
  std::vector<const Cbe*> slots;
  Term cur = s;
  for (int i : p.steps()) {
    slots.push_back(&sig.arity(cur.symbol()).at(static_cast<std::size_t>(i - 1)));
    cur = cur.args()[static_cast<std::size_t>(i - 1)];
  }
  Degree out = a;
  for (auto it = slots.rbegin(); it != slots.rend(); ++it) out = cbe_apply(**it, out);
  return out;
}

void all_positions(const Term& t, Position& here, std::vector<Position>& out) {
  out.push_back(here);
  for (std::size_t i = 0; i < t.arity(); ++i) {
    here = here.child(static_cast<int>(i + 1));
    all_positions(t.args()[i], here, out);
    std::vector<int> up = here.steps();
    up.pop_back();
    here = Position(std::move(up));
  }
}

// Every extension of `partial` mapping `extra` into the pool.
void extend_over_pool(const std::vector<Var>& extra, std::size_t k, Bindings& partial,
                      const std::vector<Term>& pool, std::vector<Bindings>& out) {
  if (k == extra.size()) {
    out.push_back(partial);
    return;
  }
  for (const Term& g : pool) {
    partial.insert_or_assign(extra[k], g);
    extend_over_pool(extra, k + 1, partial, pool, out);
  }
  partial.erase(extra[k]);
}

void require_total(QuantaleKind kind) {
  if (!is_totally_ordered(kind)) {
    throw QuantaleError("the oracle needs a totally ordered quantale");
  }
}

}  // namespace

std::vector<OracleEdge> ground_edges(const GradedTrs& trs, const Term& s,
                                     const OracleBounds& bounds, std::vector<Degree>* cut) {
  std::vector<OracleEdge> out;
  std::vector<Position> ps;
  Position root;
  all_positions(s, root, ps);
  const auto& rules = trs.rules();
  for (const Position& p : ps) {
    const Term sub = subterm_at(s, p);
    for (std::size_t i = 0; i < rules.size(); ++i) {
      const RewriteRule& rule = rules[i];
      const Degree degree = graded_at(trs.signature(), s, p, rule.degree);
      auto emit = [&](const Term& replacement, bool forward) {
        Term target = replace_at(s, p, replacement);
        if (target.depth() > bounds.max_depth) {
          if (cut) cut->push_back(degree);
          return;
        }
        out.push_back(OracleEdge{s, std::move(target), p, i, forward, degree});
      };
      Bindings b;
      if (ground_match(rule.lhs, sub, b)) emit(instantiate(rule.rhs, b), true);
      b.clear();
      if (ground_match(rule.rhs, sub, b)) {
        std::vector<Var> extra;
        for (const Var& x : vars_in_order(rule.lhs)) {
          if (b.count(x) == 0) extra.push_back(x);
        }
        if (extra.empty()) {
          emit(instantiate(rule.lhs, b), false);
        } else {
          // Only pool instances of the extra variables are explored.
          if (cut) cut->push_back(degree);
          std::vector<Bindings> all;
          extend_over_pool(extra, 0, b, bounds.pool, all);
          for (const Bindings& full : all) emit(instantiate(rule.lhs, full), false);
        }
      }
    }
  }
  return out;
}

OracleOutcome best_conversion_degree(const GradedTrs& trs, const Term& t, const Term& s,
                                     const OracleBounds& bounds) {
  require_total(trs.kind());
  if (!t.is_ground() || !s.is_ground()) throw TermError("oracle terms must be ground");
  const QuantaleKind kind = trs.kind();

  struct Entry {
    Degree degree;
    std::size_t seq;
    Term term;
  };
  auto worse = [](const Entry& a, const Entry& b) {
    if (!(a.degree == b.degree)) return better(b.degree, a.degree);
    return a.seq > b.seq;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
  std::unordered_map<Term, Degree, TermHash> best;
  std::unordered_map<Term, OracleEdge, TermHash> via;
  std::unordered_set<Term, TermHash> settled;
  std::size_t seq = 0;
  OracleOutcome outcome;
  auto add_cut = [&](const Degree& d) {
    outcome.cut_bound = outcome.cut_bound ? join(*outcome.cut_bound, d) : d;
  };

  best.emplace(t, Degree::unit(kind));
  heap.push(Entry{Degree::unit(kind), seq++, t});
  std::vector<Degree> cut;
  while (!heap.empty()) {
    Entry top = heap.top();
    heap.pop();
    if (!settled.insert(top.term).second) continue;
    if (top.term == s) {
      Conversion conv{top.degree, {}};
      for (Term cur = s; !(cur == t);) {
        const OracleEdge& e = via.at(cur);
        conv.path.push_back(e);
        cur = e.source;
      }
      std::reverse(conv.path.begin(), conv.path.end());
      outcome.conversion = std::move(conv);
      return outcome;
    }
    cut.clear();
    for (OracleEdge& e : ground_edges(trs, top.term, bounds, &cut)) {
      if (settled.count(e.target) != 0) continue;
      Degree d = tensor(top.degree, e.degree);
      auto it = best.find(e.target);
      if (it == best.end() && best.size() >= bounds.max_nodes) {
        add_cut(d);
        continue;
      }
      if (it != best.end() && !better(d, it->second)) continue;
      best.insert_or_assign(e.target, d);
      Term target = e.target;
      via.insert_or_assign(target, std::move(e));
      heap.push(Entry{std::move(d), seq++, std::move(target)});
    }
    for (const Degree& c : cut) add_cut(tensor(top.degree, c));
  }
  return outcome;
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kConfirmed:
      return "CONFIRMED";
    case Verdict::kInconclusive:
      return "INCONCLUSIVE(bounds)";
    case Verdict::kRefuted:
      return "REFUTED";
  }
  return "?";
}

std::string Verification::to_string() const {
  std::string out(gqn::to_string(verdict));
  for (const GroundCheck& c : checks) {
    if (c.verdict == verdict && c.outcome.conversion) {
      out += " via";
      for (const OracleEdge& e : c.outcome.conversion->path) {
        out += " " + e.source.to_string() + (e.forward ? " -> " : " <- ") + e.target.to_string() +
               " @ " + e.degree.to_string() + ";";
      }
      out += " degree " + c.outcome.conversion->degree.to_string();
      break;
    }
  }
  return out;
}

Verification verify_solution(const GradedTrs& trs, const Term& t, const Term& s,
                             const Substitution& sigma, const Degree& degree,
                             const OracleBounds& bounds, std::size_t max_groundings,
                             std::uint64_t seed) {
  require_total(trs.kind());
  const Term ts = apply_subst(t, sigma);
  const Term ss = apply_subst(s, sigma);
  std::vector<Var> free = vars_in_order(ts);
  for (const Var& x : vars_in_order(ss)) {
    if (std::find(free.begin(), free.end(), x) == free.end()) free.push_back(x);
  }

  std::vector<Bindings> groundings;
  if (free.empty()) {
    groundings.emplace_back();
  } else if (!bounds.pool.empty()) {
    double total = 1;
    for (std::size_t i = 0; i < free.size() && total <= static_cast<double>(max_groundings); ++i) {
      total *= static_cast<double>(bounds.pool.size());
    }
    if (total <= static_cast<double>(max_groundings)) {
      Bindings partial;
      extend_over_pool(free, 0, partial, bounds.pool, groundings);
    } else {
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<std::size_t> pick(0, bounds.pool.size() - 1);
      for (std::size_t n = 0; n < max_groundings; ++n) {
        Bindings b;
        for (const Var& x : free) b.emplace(x, bounds.pool[pick(rng)]);
        groundings.push_back(std::move(b));
      }
    }
  }

  Verification out;
  if (groundings.empty()) {
    out.verdict = Verdict::kInconclusive;
    return out;
  }
  for (Bindings& theta : groundings) {
    OracleOutcome outcome =
        best_conversion_degree(trs, apply_bindings(ts, theta), apply_bindings(ss, theta), bounds);
    Verdict v = Verdict::kRefuted;
    if (outcome.conversion && geq(outcome.conversion->degree, degree)) {
      v = Verdict::kConfirmed;
    } else if (outcome.cut_bound && geq(*outcome.cut_bound, degree)) {
      v = Verdict::kInconclusive;
    }
    if (v == Verdict::kRefuted) {
      out.verdict = Verdict::kRefuted;
    } else if (v == Verdict::kInconclusive && out.verdict == Verdict::kConfirmed) {
      out.verdict = Verdict::kInconclusive;
    }
    out.checks.push_back(GroundCheck{std::move(theta), std::move(outcome), v});
  }
  return out;
}

std::vector<RankedUnifier> enumerate_best_unifiers(const GradedTrs& trs, const Term& t,
                                                   const Term& s, const std::vector<Term>& pool,
                                                   const OracleBounds& bounds) {
  require_total(trs.kind());
  std::vector<Var> problem = vars_in_order(t);
  for (const Var& x : vars_in_order(s)) {
    if (std::find(problem.begin(), problem.end(), x) == problem.end()) problem.push_back(x);
  }
  std::vector<Bindings> maps;
  Bindings partial;
  extend_over_pool(problem, 0, partial, pool, maps);
  if (problem.empty()) maps.assign(1, Bindings{});
  if (!problem.empty() && pool.empty()) maps.clear();

  std::vector<RankedUnifier> out;
  for (const Bindings& b : maps) {
    OracleOutcome o = best_conversion_degree(trs, apply_bindings(t, b), apply_bindings(s, b), bounds);
    if (!o.conversion) continue;
    out.push_back(RankedUnifier{Substitution::from_bindings(b), o.conversion->degree,
                                o.cut_bound.has_value()});
  }
  std::stable_sort(out.begin(), out.end(), [](const RankedUnifier& a, const RankedUnifier& b) {
    if (!(a.degree == b.degree)) return better(a.degree, b.degree);
    return a.sigma.to_string() < b.sigma.to_string();
  });
  return out;
}

std::string ProbeFinding::to_string() const {
  std::string out = lhs.to_string() + " =? " + rhs.to_string() + ": ordinary " +
                    sigma.to_string() + " degree " + ordinary_degree.to_string() + ", basic ";
  out += basic_degree ? "degree " + basic_degree->to_string() : std::string("none");
  return out;
}

std::vector<ProbeFinding> probe_system(const GradedTrs& trs, const Term& t, const Term& s,
                                       std::size_t max_steps) {
  const Term goal = Term::app(std::string(kEqSymbol), {t, s});
  const std::vector<Var> problem = vars_in_order(goal);
  const std::set<Var> keep(problem.begin(), problem.end());

  SolveOptions options;
  options.max_steps = max_steps;
  std::map<std::string, Degree> basic;
  for (const Solution& sol : solve(trs, t, s, options).solutions) {
    const std::string key = canonical_substitution(sol.sigma, problem);
    auto it = basic.find(key);
    if (it == basic.end()) {
      basic.emplace(key, sol.degree);
    } else {
      it->second = join(it->second, sol.degree);
    }
  }

  const GradedTrs extended = extend_trs(trs);
  FreshVariables fresh;
  NarrowSearchOptions nopts;
  nopts.max_steps = max_steps;
  std::map<std::string, std::pair<Substitution, Degree>> ordinary;
  for (const NarrowDerivation& d : narrowing_derivations(extended, goal, nopts, fresh)) {
    if (d.end.is_var() || d.end.symbol() != kTrueSymbol) continue;
    const std::string key = canonical_substitution(d.sigma, problem);
    auto it = ordinary.find(key);
    if (it == ordinary.end()) {
      ordinary.emplace(key, std::make_pair(d.sigma.restrict_to(keep), d.degree));
    } else if (better(d.degree, it->second.second)) {
      it->second.second = d.degree;
    }
  }

  std::vector<ProbeFinding> out;
  for (const auto& [key, entry] : ordinary) {
    auto it = basic.find(key);
    if (it != basic.end() && geq(it->second, entry.second)) continue;
    std::optional<Degree> b;
    if (it != basic.end()) b = it->second;
    out.push_back(ProbeFinding{trs, t, s, entry.first, entry.second, b});
  }
  return out;
}

ProbeReport conjecture_probe(const GeneratorConfig& config, std::size_t trials,
                             std::size_t max_steps, std::uint64_t seed) {
  ProbeReport report;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < trials; ++i) {
    GeneratedProblem p = generate_problem(config, rng);
    for (ProbeFinding& f : probe_system(p.trs, p.lhs, p.rhs, max_steps)) {
      report.findings.push_back(std::move(f));
    }
    ++report.trials;
  }
  return report;
}

}  // namespace gqn
