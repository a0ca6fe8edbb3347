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

#include "gqnarrow/cli.h"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gqnarrow/narrow.h"
#include "gqnarrow/oracle.h"
#include "gqnarrow/parser.h"
#include "gqnarrow/rewrite.h"

namespace gqn {
namespace {

constexpr int kFound = 0;
constexpr int kNone = 1;
constexpr int kUsage = 2;

ProblemFile load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, 0, "cannot open file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_problem_file(text.str(), path);
}

std::string problem_header(const Problem& p) {
  return "problem " + p.lhs.to_string() + " =? " + p.rhs.to_string() +
         (p.threshold ? " threshold " + p.threshold->to_string() : std::string());
}

nlohmann::json sigma_json(const Substitution& sigma) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [x, t] : sigma.bindings()) out[x.to_string()] = t.to_string();
  return out;
}

struct SolveArgs {
  std::string file;
  std::string strategy = "eager-su";
  std::string order = "bfs";
  std::size_t max_steps = 12;
  std::size_t max_solutions = 0;
  std::size_t max_configs = 2000000;
  bool trace = false;
  bool json = false;
  bool head_filter = false;
};

int run_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const ProblemFile pf = load(a.file);
  if (pf.problems.empty()) {
    err << a.file << ": no solve statement\n";
    return kUsage;
  }
  const GradedTrs trs = pf.trs();
  SolveOptions base;
  base.strategy = a.strategy == "lazy" ? Strategy::kLazy : Strategy::kEagerSu;
  base.order = a.order == "iddfs"        ? SearchOrder::kIddfs
               : a.order == "best-first" ? SearchOrder::kBestFirst
                                         : SearchOrder::kBfs;
  base.max_steps = a.max_steps;
  if (a.max_solutions > 0) base.max_solutions = a.max_solutions;
  base.max_configs = a.max_configs;
  base.head_prefilter = a.head_filter;

  bool any = false;
  nlohmann::json doc = nlohmann::json::array();
  for (const Problem& p : pf.problems) {
    SolveOptions opts = base;
    opts.threshold = p.threshold;
    const SolveResult r = solve(trs, p.lhs, p.rhs, opts);
    any = any || !r.solutions.empty();
    err << problem_header(p) << ": search " << to_string(r.status) << ", "
        << r.configs_explored << " configurations, " << r.solutions.size() << " solutions\n";
    if (a.json) {
      nlohmann::json entry;
      entry["lhs"] = p.lhs.to_string();
      entry["rhs"] = p.rhs.to_string();
      if (p.threshold) entry["threshold"] = p.threshold->to_string();
      entry["status"] = std::string(to_string(r.status));
      entry["solutions"] = nlohmann::json::array();
      for (const Solution& s : r.solutions) {
        nlohmann::json js;
        js["sigma"] = sigma_json(s.sigma);
        js["degree"] = s.degree.to_string();
        js["dominated"] = s.dominated;
        if (a.trace) {
          js["trace"] = nlohmann::json::array();
          std::istringstream lines(render_bq_trace(s.final_config));
          for (std::string line; std::getline(lines, line);) js["trace"].push_back(line);
        }
        entry["solutions"].push_back(std::move(js));
      }
      doc.push_back(std::move(entry));
      continue;
    }
    if (pf.problems.size() > 1) out << problem_header(p) << "\n";
    for (const Solution& s : r.solutions) {
      out << s.to_string() << (s.dominated ? " dominated" : "") << "\n";
      if (a.trace) {
        std::istringstream lines(render_bq_trace(s.final_config));
        for (std::string line; std::getline(lines, line);) out << "  " << line << "\n";
      }
    }
  }
  if (a.json) out << doc.dump(2) << "\n";
  return any ? kFound : kNone;
}

int run_rewrite(const std::string& file, const std::string& term_text, std::size_t steps,
                bool innermost, std::ostream& out) {
  const ProblemFile pf = load(file);
  const GradedTrs trs = pf.trs();
  const Term t = parse_term(term_text, pf);
  const auto first = innermost ? innermost_rewrite_steps(trs, t) : rewrite_steps(trs, t);
  for (const RewriteStep& s : first) {
    out << "step " << s.position.to_string() << " r" << s.rule + 1 << " -> "
        << s.result.to_string() << " degree " << s.degree.to_string() << "\n";
  }
  RewriteSearchOptions opts;
  opts.max_steps = steps;
  opts.innermost = innermost;
  for (const ReachedTerm& r : rewrite_search(trs, t, opts)) {
    for (const Degree& d : r.degrees) {
      out << "reach " << r.term.to_string() << " degree " << d.to_string() << "\n";
    }
  }
  return first.empty() ? kNone : kFound;
}

int run_narrow(const std::string& file, const std::string& term_text, std::size_t steps,
               bool basic, std::ostream& out) {
  const ProblemFile pf = load(file);
  const GradedTrs trs = pf.trs();
  const Term t = parse_term(term_text, pf);
  const std::vector<Var> problem = vars_in_order(t);
  const std::set<Var> keep(problem.begin(), problem.end());
  NarrowSearchOptions opts;
  opts.max_steps = steps;
  opts.basic_only = basic;
  FreshVariables fresh;
  bool any = false;
  for (const NarrowDerivation& d : narrowing_derivations(trs, t, opts, fresh)) {
    if (d.steps.empty()) continue;
    any = true;
    out << "narrow " << d.end.to_string() << " sigma " << d.sigma.restrict_to(keep).to_string()
        << " degree " << d.degree.to_string() << " steps " << d.steps.size() << "\n";
  }
  return any ? kFound : kNone;
}

std::vector<Term> split_pool(const std::string& text, const ProblemFile& pf) {
  std::vector<Term> pool;
  int depth = 0;
  std::string item;
  auto flush = [&] {
    if (item.find_first_not_of(' ') == std::string::npos) return;
    Term t = parse_term(item, pf);
    if (!t.is_ground()) throw ParseError("<pool>", 1, 1, "pool term " + item + " is not ground");
    pool.push_back(std::move(t));
    item.clear();
  };
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      flush();
      item.clear();
    } else {
      item += c;
    }
  }
  flush();
  return pool;
}

int run_oracle(const std::string& file, const std::string& pool_text, std::size_t depth,
               std::size_t max_nodes, bool verify, std::ostream& out, std::ostream& err) {
  const ProblemFile pf = load(file);
  if (pf.problems.empty()) {
    err << file << ": no solve statement\n";
    return kUsage;
  }
  const GradedTrs trs = pf.trs();
  OracleBounds bounds;
  bounds.max_depth = depth;
  bounds.max_nodes = max_nodes;
  if (pool_text.empty()) {
    for (const std::string& f : pf.symbol_order) {
      if (pf.signature.arity(f).empty()) bounds.pool.push_back(Term::app(f));
    }
  } else {
    bounds.pool = split_pool(pool_text, pf);
  }
  bool ok = true;
  bool any = false;
  for (const Problem& p : pf.problems) {
    if (pf.problems.size() > 1) out << problem_header(p) << "\n";
    for (const RankedUnifier& u : enumerate_best_unifiers(trs, p.lhs, p.rhs, bounds.pool, bounds)) {
      any = true;
      out << "unifier " << u.sigma.to_string() << " degree " << u.degree.to_string()
          << (u.bounded ? " bounded" : "") << "\n";
    }
    if (!verify) continue;
    SolveOptions opts;
    opts.threshold = p.threshold;
    for (const Solution& s : solve(trs, p.lhs, p.rhs, opts).solutions) {
      const Verification v = verify_solution(trs, p.lhs, p.rhs, s.sigma, s.degree, bounds);
      out << "verify " << s.to_string() << ": " << v.to_string() << "\n";
      ok = ok && v.verdict != Verdict::kRefuted;
    }
  }
  if (verify) return ok ? kFound : kNone;
  return any ? kFound : kNone;
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

int run_check(const std::string& file, std::ostream& out) {
  const ProblemFile pf = load(file);
  const GradedTrs trs = pf.trs();
  const TrsAttributes& a = trs.attributes();
  out << "quantale " << quantale_name(trs.kind()) << "\n";
  out << "symbols " << pf.symbol_order.size() << "\n";
  out << "rules " << trs.rules().size() << "\n";
  out << "problems " << pf.problems.size() << "\n";
  out << "left-linear " << yes_no(a.left_linear) << "\n";
  out << "right-linear " << yes_no(a.right_linear) << "\n";
  out << "left-ground " << yes_no(a.left_ground) << "\n";
  out << "right-ground " << yes_no(a.right_ground) << "\n";
  out << "balanced " << yes_no(a.balanced) << "\n";
  out << "declared-confluent " << yes_no(a.declared_confluent) << "\n";
  for (std::size_t i = 0; i < trs.rules().size(); ++i) {
    const RuleAttributes& r = a.rules[i];
    out << "rule r" << i + 1 << " " << trs.rules()[i].to_string() << ":";
    if (r.left_linear) out << " left-linear";
    if (r.right_linear) out << " right-linear";
    if (r.left_ground) out << " left-ground";
    if (r.right_ground) out << " right-ground";
    if (r.balanced) {
      out << " balanced";
    } else {
      out << " unbalanced(";
      for (std::size_t k = 0; k < r.unbalanced_vars.size(); ++k) {
        out << (k == 0 ? "" : ",") << r.unbalanced_vars[k].to_string();
      }
      out << ")";
    }
    out << "\n";
  }
  return kFound;
}

}  // namespace

int run_cli(int argc, const char* const argv[], std::ostream& out, std::ostream& err) {
  CLI::App app{"Graded quantitative rewriting, narrowing and equational unification"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "solve the problems of a file with BQNarrow");
  solve_cmd->add_option("file", sa.file, "problem file (.gtrs)")->required();
  solve_cmd->add_option("--strategy", sa.strategy, "eager-su or lazy")
      ->check(CLI::IsMember({"eager-su", "lazy"}));
  solve_cmd->add_option("--order", sa.order, "bfs, iddfs or best-first")
      ->check(CLI::IsMember({"bfs", "iddfs", "best-first"}));
  solve_cmd->add_option("--max-steps", sa.max_steps, "bound on LP and Con steps per branch");
  solve_cmd->add_option("--max-solutions", sa.max_solutions, "stop after K solutions");
  solve_cmd->add_option("--max-configs", sa.max_configs, "bound on expanded configurations");
  solve_cmd->add_flag("--trace", sa.trace, "print the calculus steps of each solution");
  solve_cmd->add_flag("--json", sa.json, "machine-readable output");
  solve_cmd->add_flag("--head-filter", sa.head_filter, "skip LP variants with a foreign head");

  std::string file;
  std::string term_text;
  std::size_t steps = 0;
  bool innermost = false;
  auto* rewrite_cmd = app.add_subcommand("rewrite", "graded rewriting from a term");
  rewrite_cmd->add_option("file", file, "problem file (.gtrs)")->required();
  rewrite_cmd->add_option("--term", term_text, "start term")->required();
  rewrite_cmd->add_option("--steps", steps, "maximum number of steps")->default_val(8);
  rewrite_cmd->add_flag("--innermost", innermost, "innermost rewriting only");

  bool basic = false;
  auto* narrow_cmd = app.add_subcommand("narrow", "graded narrowing from a term");
  narrow_cmd->add_option("file", file, "problem file (.gtrs)")->required();
  narrow_cmd->add_option("--term", term_text, "start term")->required();
  narrow_cmd->add_option("--steps", steps, "maximum number of steps")->default_val(3);
  narrow_cmd->add_flag("--basic", basic, "basic narrowing only");

  std::string pool;
  std::size_t depth = 10;
  std::size_t max_nodes = 100000;
  bool verify = false;
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force best unifiers over a ground pool");
  oracle_cmd->add_option("file", file, "problem file (.gtrs)")->required();
  oracle_cmd->add_option("--pool", pool, "comma-separated ground terms (default: all constants)");
  oracle_cmd->add_option("--depth", depth, "maximum term depth in the search");
  oracle_cmd->add_option("--max-nodes", max_nodes, "maximum discovered terms per query");
  oracle_cmd->add_flag("--verify", verify, "check every solver solution against the oracle");

  auto* check_cmd = app.add_subcommand("check", "report attributes of a rewrite system");
  check_cmd->add_option("file", file, "problem file (.gtrs)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kFound : kUsage;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(sa, out, err);
    if (rewrite_cmd->parsed()) return run_rewrite(file, term_text, steps, innermost, out);
    if (narrow_cmd->parsed()) return run_narrow(file, term_text, steps, basic, out);
    if (oracle_cmd->parsed()) return run_oracle(file, pool, depth, max_nodes, verify, out, err);
    if (check_cmd->parsed()) return run_check(file, out);
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace gqn
