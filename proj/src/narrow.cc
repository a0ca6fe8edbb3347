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

#include "gqnarrow/narrow.h"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "gqnarrow/error.h"

namespace gqn {
namespace {

// Grades inside e =? s need the extended signature.
Signature grading_signature(const GradedTrs& trs) {
  return trs.is_extended() ? trs.signature() : trs.signature().extended();
}

bool is_true(const Term& t) { return !t.is_var() && t.symbol() == kTrueSymbol && t.arity() == 0; }

bool is_equation(const Term& t) {
  return !t.is_var() && t.symbol() == kEqSymbol && t.arity() == 2;
}

const Term& true_term() {
  static const Term kTrue = Term::app(std::string(kTrueSymbol));
  return kTrue;
}

}  // namespace

// ---------------------------------------------------------------------------
// Ordinary narrowing.

std::vector<NarrowStep> narrowing_steps(const GradedTrs& trs, const Term& t,
                                        FreshVariables& fresh) {
  const Signature sig = grading_signature(trs);
  std::vector<NarrowStep> out;
  for (const Position& p : fun_positions(t)) {
    const Term redex = subterm_at(t, p);
    std::optional<Cbe> grade;
    for (std::size_t i = 0; i < trs.rules().size(); ++i) {
      const RewriteRule& rule = trs.rules()[i];
      // A non-variable redex can only unify with a lhs of the same head.
      if (rule.lhs.symbol() != redex.symbol()) continue;
      const int index = fresh.issue();
      RewriteRule variant = rename_rule(rule, index);
      MguResult unifier = mgu(redex, variant.lhs);
      if (!succeeded(unifier)) continue;
      Substitution sigma = std::get<Substitution>(std::move(unifier));
      if (!grade) grade = grade_of_position(sig, t, p);
      Degree degree = cbe_apply(*grade, rule.degree);
      Term result = apply_subst(replace_at(t, p, variant.rhs), sigma);
      out.push_back(NarrowStep{p, i, index, std::move(variant), std::move(sigma), std::move(degree),
                               std::move(result)});
    }
  }
  return out;
}

BasicPositionSet basic_update(const BasicPositionSet& basic, const Position& p, const Term& rhs) {
  if (basic.count(p) == 0) {
    throw DerivationError("position " + p.to_string() + " is not basic");
  }
  BasicPositionSet out;
  for (const Position& q : basic) {
    if (!p.is_prefix_of(q)) out.insert(q);
  }
  for (const Position& q : fun_positions(rhs)) out.insert(p.concat(q));
  return out;
}

namespace {

BasicPositionSet fold_basic(const BasicPositionSet& basic, const Position& p, const Term& rhs) {
  BasicPositionSet out;
  for (const Position& q : basic) {
    if (!p.is_prefix_of(q)) out.insert(q);
  }
  for (const Position& q : fun_positions(rhs)) out.insert(p.concat(q));
  return out;
}

BasicPositionSet initial_basic(const Term& t) {
  auto fp = fun_positions(t);
  return BasicPositionSet(fp.begin(), fp.end());
}

}  // namespace

std::vector<BasicPositionSet> basic_positions(const NarrowDerivation& derivation) {
  std::vector<BasicPositionSet> out{initial_basic(derivation.start)};
  for (const NarrowStep& step : derivation.steps) {
    out.push_back(fold_basic(out.back(), step.position, step.variant.rhs));
  }
  return out;
}

bool is_basic(const NarrowDerivation& derivation) {
  const auto sets = basic_positions(derivation);
  for (std::size_t i = 0; i < derivation.steps.size(); ++i) {
    if (sets[i].count(derivation.steps[i].position) == 0) return false;
  }
  return true;
}

std::vector<NarrowDerivation> narrowing_derivations(const GradedTrs& trs, const Term& t,
                                                    const NarrowSearchOptions& options,
                                                    FreshVariables& fresh) {
  struct Item {
    NarrowDerivation derivation;
    BasicPositionSet basic;
  };
  std::vector<NarrowDerivation> out;
  std::deque<Item> queue;
  queue.push_back(Item{NarrowDerivation{t, {}, t, Substitution(), Degree::unit(trs.kind())},
                       initial_basic(t)});
  while (!queue.empty() && out.size() < options.max_derivations) {
    Item item = std::move(queue.front());
    queue.pop_front();
    if (item.derivation.steps.size() < options.max_steps) {
      for (NarrowStep& step : narrowing_steps(trs, item.derivation.end, fresh)) {
        if (options.basic_only && item.basic.count(step.position) == 0) continue;
        Degree degree = tensor(item.derivation.degree, step.degree);
        if (options.threshold && !geq(degree, *options.threshold)) continue;
        Item next{item.derivation, {}};
        next.derivation.sigma = compose_subst(item.derivation.sigma, step.mgu);
        next.derivation.degree = std::move(degree);
        next.derivation.end = step.result;
        if (options.basic_only) next.basic = fold_basic(item.basic, step.position, step.variant.rhs);
        next.derivation.steps.push_back(std::move(step));
        queue.push_back(std::move(next));
      }
    }
    out.push_back(std::move(item.derivation));
  }
  return out;
}

std::vector<NarrowDerivation> iterate_narrowing(const GradedTrs& trs, const Term& t,
                                                std::size_t n, FreshVariables& fresh) {
  NarrowSearchOptions options;
  options.max_steps = n;
  std::vector<NarrowDerivation> out;
  for (NarrowDerivation& d : narrowing_derivations(trs, t, options, fresh)) {
    if (d.steps.size() == n) out.push_back(std::move(d));
  }
  return out;
}

// ---------------------------------------------------------------------------
// BQNarrow.

std::string_view to_string(BqRule rule) {
  switch (rule) {
    case BqRule::kLP:
      return "LP";
    case BqRule::kSU:
      return "SU";
    case BqRule::kCla:
      return "Cla";
    case BqRule::kCon:
      return "Con";
  }
  return "?";
}

bool BqConfig::solved() const { return is_true(e) && constraints.empty(); }

std::string BqConfig::to_string() const {
  return e.to_string() + " ; " + gqn::to_string(constraints) + " ; " + sigma.to_string() + " ; " +
         degree.to_string();
}

std::vector<const BqTraceNode*> trace_of(const BqConfig& config) {
  std::vector<const BqTraceNode*> out;
  for (const BqTraceNode* n = config.trace.get(); n != nullptr; n = n->parent.get()) {
    out.push_back(n);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

BqConfig initial_config(const Term& t, const Term& s, QuantaleKind kind) {
  return BqConfig{Term::app(std::string(kEqSymbol), {t, s}), {}, Substitution(),
                  Degree::unit(kind), nullptr};
}

namespace {

// C is a set: posting an equation already present leaves it unchanged.
void post(EquationSet& constraints, Equation eq) {
  for (const Equation& e : constraints) {
    if (e.lhs == eq.lhs && e.rhs == eq.rhs) return;
  }
  constraints.push_back(std::move(eq));
}

BqConfig with_trace(BqConfig next, const BqConfig& previous, BqTraceEntry entry) {
  BqConfig snapshot = next;
  snapshot.trace = nullptr;
  next.trace = std::make_shared<const BqTraceNode>(
      BqTraceNode{std::move(entry), std::move(snapshot), previous.trace});
  return next;
}

}  // namespace

std::optional<BqConfig> apply_lp(const BqConfig& config, const GradedTrs& trs,
                                 const Signature& extended, const Position& p,
                                 std::size_t rule_index, int variant_index) {
  if (is_true(config.e) || rule_index >= trs.rules().size() || !is_valid_position(config.e, p)) {
    return std::nullopt;
  }
  const Term redex = subterm_at(config.e, p);
  if (redex.is_var()) return std::nullopt;
  const RewriteRule& rule = trs.rules()[rule_index];
  const RewriteRule variant = rename_rule(rule, variant_index);
  const Degree step = cbe_apply(grade_of_position(extended, config.e, p), rule.degree);
  BqConfig next{replace_at(config.e, p, variant.rhs), config.constraints, config.sigma,
                tensor(config.degree, step), nullptr};
  post(next.constraints,
       Equation{apply_subst(variant.lhs, config.sigma), apply_subst(redex, config.sigma)});
  return with_trace(std::move(next), config,
                    BqTraceEntry{BqRule::kLP, p, rule_index, variant_index, step});
}

std::optional<BqConfig> apply_su(const BqConfig& config) {
  if (config.constraints.empty()) return std::nullopt;
  MguResult rho = mgu(config.constraints);
  const Degree kappa = Degree::unit(config.degree.kind());
  if (!succeeded(rho)) return std::nullopt;
  BqConfig next{config.e, {}, compose_subst(config.sigma, std::get<Substitution>(rho)),
                config.degree, nullptr};
  return with_trace(std::move(next), config, BqTraceEntry{BqRule::kSU, {}, 0, 0, kappa});
}

std::optional<BqConfig> apply_con(const BqConfig& config) {
  if (!is_equation(config.e)) return std::nullopt;
  BqConfig next{true_term(), config.constraints, config.sigma, config.degree, nullptr};
  post(next.constraints, Equation{apply_subst(config.e.args()[0], config.sigma),
                                  apply_subst(config.e.args()[1], config.sigma)});
  return with_trace(std::move(next), config,
                    BqTraceEntry{BqRule::kCon, {}, 0, 0, Degree::unit(config.degree.kind())});
}

std::vector<BqSuccessor> bq_step(const BqConfig& config, const GradedTrs& trs,
                                 FreshVariables& fresh, bool head_prefilter) {
  std::vector<BqSuccessor> out;
  if (!config.constraints.empty()) {
    if (auto next = apply_su(config)) {
      out.push_back(BqSuccessor{BqRule::kSU, std::move(next)});
    } else {
      out.push_back(BqSuccessor{BqRule::kCla, std::nullopt});
    }
  }
  if (is_true(config.e)) return out;
  const Signature extended = grading_signature(trs);
  for (const Position& p : fun_positions(config.e)) {
    const std::string& head = subterm_at(config.e, p).symbol();
    for (std::size_t i = 0; i < trs.rules().size(); ++i) {
      if (head_prefilter && trs.rules()[i].lhs.symbol() != head) continue;
      if (auto next = apply_lp(config, trs, extended, p, i, fresh.issue())) {
        out.push_back(BqSuccessor{BqRule::kLP, std::move(next)});
      }
    }
  }
  if (auto next = apply_con(config)) out.push_back(BqSuccessor{BqRule::kCon, std::move(next)});
  return out;
}

std::string render_bq_trace(const BqConfig& config) {
  std::string out;
  for (const BqTraceNode* node : trace_of(config)) {
    const BqTraceEntry& e = node->entry;
    std::string head(to_string(e.rule));
    if (e.rule == BqRule::kLP) {
      head += " " + e.position.to_string() + " r" + std::to_string(e.rule_index + 1) + " v" +
              std::to_string(e.variant_index) + " @ " + e.step_degree.to_string();
    }
    out += head + "  ==> " + node->config.to_string() + "\n";
  }
  return out;
}

BqConfig replay_bq_trace(const GradedTrs& trs, const Term& t, const Term& s,
                         const std::string& rendered) {
  const Signature extended = grading_signature(trs);
  BqConfig config = initial_config(t, s, trs.kind());
  std::istringstream lines(rendered);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::istringstream words(line);
    std::string tag;
    words >> tag;
    std::optional<BqConfig> next;
    if (tag == "LP") {
      std::string pos, rule, variant;
      words >> pos >> rule >> variant;
      if (rule.size() < 2 || rule[0] != 'r' || variant.size() < 2 || variant[0] != 'v') {
        throw DerivationError("malformed trace line: " + line);
      }
      next = apply_lp(config, trs, extended, Position::parse(pos),
                      std::stoul(rule.substr(1)) - 1, std::stoi(variant.substr(1)));
    } else if (tag == "SU") {
      next = apply_su(config);
    } else if (tag == "Con") {
      next = apply_con(config);
    } else {
      throw DerivationError("unknown calculus rule in trace line: " + line);
    }
    if (!next) throw DerivationError("trace line does not apply: " + line);
    config = std::move(*next);
  }
  return config;
}

// ---------------------------------------------------------------------------
// Solver.

std::string_view to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::kExhausted:
      return "exhausted";
    case SearchStatus::kStepLimit:
      return "step limit reached";
    case SearchStatus::kConfigLimit:
      return "configuration limit reached";
    case SearchStatus::kSolutionLimit:
      return "solution limit reached";
  }
  return "?";
}

std::string Solution::to_string() const {
  return "solution " + sigma.to_string() + " degree " + degree.to_string();
}

namespace {

// Renames variables not in `fixed` to (name, 1), (name, 2), ... in order of
// first occurrence across the visited terms.
class Canonicalizer {
 public:
  explicit Canonicalizer(const std::set<Var>& fixed) : fixed_(fixed) {}

  void visit(const Term& t) {
    for (const Var& x : vars_in_order(t)) name(x);
  }

  const Var& name(const Var& x) {
    auto it = renaming_.find(x);
    if (it != renaming_.end()) return it->second;
    Var renamed = fixed_.count(x) != 0 ? x : Var{x.name, ++counter_};
    return renaming_.emplace(x, std::move(renamed)).first->second;
  }

  Term apply(const Term& t) {
    visit(t);
    Bindings b;
    for (const Var& x : vars(t)) b.emplace(x, Term::var(renaming_.at(x)));
    return apply_bindings(t, b);
  }

 private:
  const std::set<Var>& fixed_;
  std::map<Var, Var> renaming_;
  int counter_ = 0;
};

Substitution canonical_solution(const Substitution& sigma, const std::vector<Var>& problem_vars) {
  const std::set<Var> fixed(problem_vars.begin(), problem_vars.end());
  Canonicalizer canon(fixed);
  Bindings out;
  std::vector<Var> sorted = problem_vars;
  std::sort(sorted.begin(), sorted.end());
  for (const Var& x : sorted) {
    if (const Term* t = sigma.lookup(x)) out.emplace(x, canon.apply(*t));
  }
  return Substitution::from_bindings(std::move(out));
}

// Key identifying a configuration up to renaming of fresh variables.
std::string config_key(const BqConfig& c, const std::set<Var>& problem_vars) {
  Canonicalizer canon(problem_vars);
  std::string key = canon.apply(c.e).to_string();
  key += " | ";
  for (const Equation& eq : c.constraints) {
    key += canon.apply(eq.lhs).to_string() + "=" + canon.apply(eq.rhs).to_string() + ",";
  }
  std::set<Var> relevant = problem_vars;
  for (const Var& x : vars(c.e)) relevant.insert(x);
  for (const Equation& eq : c.constraints) {
    for (const Var& x : vars(eq.lhs)) relevant.insert(x);
    for (const Var& x : vars(eq.rhs)) relevant.insert(x);
  }
  std::vector<std::pair<Var, Term>> entries;
  for (const auto& [x, t] : c.sigma.bindings()) {
    if (relevant.count(x) != 0) entries.emplace_back(canon.name(x), t);
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  key += " | ";
  for (const auto& [x, t] : entries) key += x.to_string() + ":" + canon.apply(t).to_string() + ",";
  return key;
}

struct Node {
  BqConfig config;
  std::size_t steps = 0;
};

class Solver {
 public:
  Solver(const GradedTrs& trs, const Term& t, const Term& s, const SolveOptions& options,
         const std::function<bool(const Solution&)>& on_solution)
      : trs_(trs),
        extended_(trs.signature().extended()),
        options_(options),
        on_solution_(on_solution),
        problem_vars_(vars_in_order(Term::app(std::string(kEqSymbol), {t, s}))),
        problem_set_(problem_vars_.begin(), problem_vars_.end()),
        start_{initial_config(t, s, trs.kind()), 0} {}

  SolveResult run() {
    switch (options_.order) {
      case SearchOrder::kBfs:
        run_queue(false);
        break;
      case SearchOrder::kBestFirst:
        if (!is_totally_ordered(trs_.kind())) {
          throw QuantaleError("best-first search needs a totally ordered quantale");
        }
        run_queue(true);
        break;
      case SearchOrder::kIddfs:
        run_iddfs();
        break;
    }
    finish();
    return std::move(result_);
  }

 private:
  bool stopped() const { return stop_; }

  // Returns false when the node should not be explored further.
  bool admit(const Node& node) {
    if (options_.threshold && !geq(node.config.degree, *options_.threshold)) return false;
    if (!options_.deduplicate) return true;
    // Pending constraints and their solved form have the same futures, so
    // lazy configurations are keyed after SU.
    std::optional<BqConfig> solved_form;
    if (!node.config.constraints.empty()) {
      solved_form = apply_su(node.config);
      if (!solved_form) return true;
    }
    auto& seen = seen_[config_key(solved_form ? *solved_form : node.config, problem_set_)];
    for (const auto& [d, steps] : seen) {
      if (geq(d, node.config.degree) && steps <= node.steps) return false;
    }
    seen.emplace_back(node.config.degree, node.steps);
    return true;
  }

  void record(const BqConfig& config) {
    Substitution sigma = canonical_solution(config.sigma, problem_vars_);
    std::string key = sigma.to_string() + " @ " + config.degree.to_string();
    if (!emitted_.insert(key).second) return;
    Solution sol{std::move(sigma), config.degree, config, false};
    result_.solutions.push_back(sol);
    if (on_solution_ && !on_solution_(sol)) stop_ = true;
    if (result_.solutions.size() >= options_.max_solutions) {
      result_.status = SearchStatus::kSolutionLimit;
      stop_ = true;
    }
  }

  // Children of a node; solved configurations are recorded, not returned.
  std::vector<Node> expand(const Node& node) {
    if (++result_.configs_explored > options_.max_configs) {
      result_.status = SearchStatus::kConfigLimit;
      stop_ = true;
      return {};
    }
    std::vector<Node> out;
    const BqConfig& c = node.config;
    const bool can_step = node.steps < options_.max_steps;
    if (!is_true(c.e) && !can_step) cut_ = true;

    auto push = [&](BqConfig next, std::size_t steps) {
      if (next.solved()) {
        if (!options_.threshold || geq(next.degree, *options_.threshold)) record(next);
        return;
      }
      out.push_back(Node{std::move(next), steps});
    };

    if (options_.strategy == Strategy::kEagerSu) {
      if (is_true(c.e) || !can_step) return out;
      for (const Position& p : fun_positions(c.e)) {
        const std::string& head = subterm_at(c.e, p).symbol();
        for (std::size_t i = 0; i < trs_.rules().size(); ++i) {
          if (options_.head_prefilter && trs_.rules()[i].lhs.symbol() != head) continue;
          auto lp = apply_lp(c, trs_, extended_, p, i, fresh_.issue());
          if (!lp) continue;
          if (options_.threshold && !geq(lp->degree, *options_.threshold)) continue;
          if (auto su = apply_su(*lp)) push(std::move(*su), node.steps + 1);
        }
      }
      if (auto con = apply_con(c)) {
        if (auto su = apply_su(*con)) push(std::move(*su), node.steps + 1);
      }
      return out;
    }

    // Lazy: constraints accumulate until SU is chosen.
    if (!c.constraints.empty()) {
      auto su = apply_su(c);
      if (!su) return out;  // Cla: the branch fails, and so would every extension
      push(std::move(*su), node.steps);
    }
    if (is_true(c.e) || !can_step) return out;
    for (const Position& p : fun_positions(c.e)) {
      const std::string& head = subterm_at(c.e, p).symbol();
      for (std::size_t i = 0; i < trs_.rules().size(); ++i) {
        if (options_.head_prefilter && trs_.rules()[i].lhs.symbol() != head) continue;
        if (auto lp = apply_lp(c, trs_, extended_, p, i, fresh_.issue())) {
          push(std::move(*lp), node.steps + 1);
        }
      }
    }
    if (auto con = apply_con(c)) push(std::move(*con), node.steps + 1);
    return out;
  }

  void run_queue(bool best_first) {
    auto worse = [](const std::pair<Node, std::size_t>& a, const std::pair<Node, std::size_t>& b) {
      const Degree& da = a.first.config.degree;
      const Degree& db = b.first.config.degree;
      if (!(da == db)) return leq(da, db);
      if (a.first.steps != b.first.steps) return a.first.steps > b.first.steps;
      return a.second > b.second;
    };
    std::priority_queue<std::pair<Node, std::size_t>, std::vector<std::pair<Node, std::size_t>>,
                        decltype(worse)>
        heap(worse);
    std::deque<Node> fifo;
    std::size_t sequence = 0;
    auto push = [&](Node n) {
      if (!admit(n)) return;
      if (best_first) {
        heap.emplace(std::move(n), sequence++);
      } else {
        fifo.push_back(std::move(n));
      }
    };
    push(start_);
    while (!stopped() && (best_first ? !heap.empty() : !fifo.empty())) {
      std::optional<Node> node;
      if (best_first) {
        node = heap.top().first;
        heap.pop();
      } else {
        node = std::move(fifo.front());
        fifo.pop_front();
      }
      for (Node& child : expand(*node)) push(std::move(child));
    }
  }

  void dfs(const Node& node) {
    if (stopped()) return;
    for (Node& child : expand(node)) {
      if (stopped()) return;
      if (admit(child)) dfs(child);
    }
  }

  void run_iddfs() {
    const std::size_t limit = options_.max_steps;
    for (std::size_t depth = 0; depth <= limit && !stopped(); ++depth) {
      SolveOptions bounded = options_;
      options_.max_steps = depth;
      seen_.clear();
      cut_ = false;
      if (admit(start_)) dfs(start_);
      options_ = bounded;
      if (!cut_) break;
    }
  }

  void finish() {
    if (result_.status == SearchStatus::kExhausted && cut_) result_.status = SearchStatus::kStepLimit;
    auto& sols = result_.solutions;
    for (Solution& a : sols) {
      for (const Solution& b : sols) {
        if (a.sigma == b.sigma && better(b.degree, a.degree)) a.dominated = true;
      }
    }
    std::stable_sort(sols.begin(), sols.end(), [](const Solution& a, const Solution& b) {
      if (!(a.degree == b.degree)) return better(a.degree, b.degree);
      return a.sigma.to_string() < b.sigma.to_string();
    });
  }

  const GradedTrs& trs_;
  const Signature extended_;
  SolveOptions options_;
  const std::function<bool(const Solution&)>& on_solution_;
  const std::vector<Var> problem_vars_;
  const std::set<Var> problem_set_;
  const Node start_;
  FreshVariables fresh_;
  std::unordered_map<std::string, std::vector<std::pair<Degree, std::size_t>>> seen_;
  std::set<std::string> emitted_;
  SolveResult result_;
  bool stop_ = false;
  bool cut_ = false;
};

}  // namespace

SolveResult solve(const GradedTrs& trs, const Term& t, const Term& s, const SolveOptions& options,
                  const std::function<bool(const Solution&)>& on_solution) {
  if (trs.is_extended()) throw RuleError("solve expects the unextended rewrite system");
  trs.signature().check_term(t);
  trs.signature().check_term(s);
  if (options.threshold && options.threshold->kind() != trs.kind()) {
    throw QuantaleError("threshold is not in the quantale of the rewrite system");
  }
  return Solver(trs, t, s, options, on_solution).run();
}

std::string canonical_substitution(const Substitution& sigma, const std::vector<Var>& vars) {
  const std::set<Var> fixed(vars.begin(), vars.end());
  Canonicalizer canon(fixed);
  std::vector<Var> sorted = vars;
  std::sort(sorted.begin(), sorted.end());
  std::string out = "{";
  for (const Var& x : sorted) {
    const Term* t = sigma.lookup(x);
    out += x.to_string() + "->" + (t ? canon.apply(*t).to_string() : x.to_string()) + ";";
  }
  return out + "}";
}

std::vector<BqConfig> derivation_to_calculus(const GradedTrs& trs,
                                             const NarrowDerivation& derivation) {
  if (!is_basic(derivation)) throw DerivationError("narrowing derivation is not basic");
  const Signature extended = grading_signature(trs);
  std::vector<BqConfig> out;
  BqConfig config{derivation.start, {}, Substitution(), Degree::unit(trs.kind()), nullptr};
  for (const NarrowStep& step : derivation.steps) {
    const RewriteRule& rule = trs.rules().at(step.rule);
    std::optional<BqConfig> first;
    if (rule.lhs.symbol() == kEqSymbol) {
      first = apply_con(config);
    } else {
      first = apply_lp(config, trs, extended, step.position, step.rule, step.variant_index);
    }
    if (!first) throw DerivationError("step at " + step.position.to_string() + " does not apply");
    out.push_back(*first);
    auto su = apply_su(*first);
    if (!su) throw DerivationError("constraint of step at " + step.position.to_string() +
                                   " is not unifiable");
    out.push_back(*su);
    config = std::move(*su);
  }
  return out;
}

}  // namespace gqn
