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

#include "gqnarrow/parser.h"

#include <cctype>
#include <sstream>

#include "gqnarrow/cbe.h"

namespace gqn {

ParseError::ParseError(std::string file, int line, int column, const std::string& message)
    : Error(file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      file_(std::move(file)),
      line_(line),
      column_(column),
      message_(message) {}

GradedTrs ProblemFile::trs() const { return GradedTrs(signature, rules, confluent); }

namespace {

enum class Tok { kIdent, kOp, kLParen, kRParen, kComma, kColon, kSemi, kSlash, kArrow, kEqQ, kEnd };

struct Token {
  Tok kind;
  std::string text;
  int column;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\'';
}
bool op_char(char c) { return c == '+' || c == '*'; }

bool reserved(std::string_view name) { return name == kTrueSymbol || name == kEqSymbol; }

// Names like x_3 would collide with the rendering of fresh variables.
bool fresh_like(std::string_view name) {
  const auto us = name.rfind('_');
  if (us == std::string_view::npos || us + 1 == name.size()) return false;
  for (std::size_t i = us + 1; i < name.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(name[i])) == 0) return false;
  }
  return true;
}

class LineParser {
 public:
  LineParser(std::string_view text, const std::string& file, int line, ProblemFile& pf)
      : file_(file), line_(line), pf_(pf) {
    lex(text);
  }

  [[noreturn]] void fail(int column, const std::string& message) const {
    throw ParseError(file_, line_, column, message);
  }

  const Token& peek() const { return tokens_[pos_]; }
  Token take() { return tokens_[pos_ == tokens_.size() - 1 ? pos_ : pos_++]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(std::string_view w) const { return at(Tok::kIdent) && peek().text == w; }

  Token expect(Tok k, const char* what) {
    if (!at(k)) fail(peek().column, std::string("expected ") + what + describe_next());
    return take();
  }

  void expect_end() {
    if (!at(Tok::kEnd)) fail(peek().column, "unexpected '" + peek().text + "'");
  }

  std::string describe_next() const {
    return at(Tok::kEnd) ? " at end of line" : " before '" + peek().text + "'";
  }

  Degree degree() {
    const Token first = expect(Tok::kIdent, "a degree");
    std::string text = first.text;
    if (at(Tok::kSlash)) {
      take();
      text += "/" + expect(Tok::kIdent, "a denominator").text;
    }
    try {
      return Degree::parse(pf_.kind, text);
    } catch (const Error& e) {
      fail(first.column, e.what());
    }
  }

  Cbe cbe() {
    const Token name = expect(Tok::kIdent, "an arity function");
    std::string text = name.text;
    if (at(Tok::kLParen)) {
      take();
      text += "(" + expect(Tok::kIdent, "an argument").text;
      if (at(Tok::kSlash)) {
        take();
        text += "/" + expect(Tok::kIdent, "a denominator").text;
      }
      expect(Tok::kRParen, "')'");
      text += ")";
    }
    try {
      Cbe f = Cbe::parse(text);
      if (!admissible(f, pf_.kind)) {
        fail(name.column, "inadmissible arity function " + text + " for quantale " +
                              std::string(quantale_name(pf_.kind)));
      }
      return f;
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(name.column, e.what());
    }
  }

  Term term() {
    Term lhs = primary();
    while (at(Tok::kOp)) {
      const Token op = take();
      check_symbol(op, 2);
      Term rhs = primary();
      lhs = Term::app(op.text, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  // Statements.
  void var_decl() {
    while (!at(Tok::kEnd) && !at(Tok::kSemi)) {
      const Token name = expect(Tok::kIdent, "a variable name");
      if (reserved(name.text)) fail(name.column, "reserved token '" + name.text + "'");
      if (fresh_like(name.text)) {
        fail(name.column, "variable name '" + name.text + "' clashes with fresh variable names");
      }
      if (is_var(name.text) || pf_.signature.contains(name.text)) {
        fail(name.column, "'" + name.text + "' is already declared");
      }
      pf_.variables.push_back(Var{name.text, 0});
      if (at(Tok::kComma)) take();
    }
    if (at(Tok::kSemi)) take();
    expect_end();
  }

  void fun_decl() {
    if (!at(Tok::kIdent) && !at(Tok::kOp)) fail(peek().column, "expected a symbol name");
    const Token name = take();
    if (reserved(name.text)) fail(name.column, "reserved token '" + name.text + "'");
    if (is_var(name.text) || pf_.signature.contains(name.text)) {
      fail(name.column, "'" + name.text + "' is already declared");
    }
    expect(Tok::kSlash, "'/'");
    const Token n = expect(Tok::kIdent, "an arity");
    std::size_t arity = 0;
    try {
      std::size_t used = 0;
      arity = std::stoul(n.text, &used);
      if (used != n.text.size()) throw std::invalid_argument(n.text);
    } catch (const std::exception&) {
      fail(n.column, "malformed arity '" + n.text + "'");
    }
    std::vector<Cbe> slots;
    if (at(Tok::kColon)) {
      take();
      const Token open = expect(Tok::kLParen, "'('");
      if (!at(Tok::kRParen)) {
        slots.push_back(cbe());
        while (at(Tok::kComma)) {
          take();
          slots.push_back(cbe());
        }
      }
      expect(Tok::kRParen, "')'");
      if (slots.size() != arity) {
        fail(open.column, "symbol " + name.text + "/" + std::to_string(arity) + " given " +
                              std::to_string(slots.size()) + " arity functions");
      }
    } else {
      slots.assign(arity, Cbe::id());
    }
    expect_end();
    if (name.kind == Tok::kOp && arity != 2) {
      fail(name.column, "operator symbol '" + name.text + "' must be binary");
    }
    try {
      pf_.signature.declare(name.text, std::move(slots));
    } catch (const Error& e) {
      fail(name.column, e.what());
    }
    pf_.symbol_order.push_back(name.text);
  }

  void rule_decl() {
    const int start = peek().column;
    Degree d = degree();
    expect(Tok::kColon, "':'");
    const int lhs_col = peek().column;
    Term lhs = term();
    expect(Tok::kArrow, "'->'");
    const int rhs_col = peek().column;
    Term rhs = term();
    expect_end();
    if (lhs.is_var()) fail(lhs_col, "left-hand side of a rule is a variable");
    const std::set<Var> lv = vars(lhs);
    for (const Var& x : vars(rhs)) {
      if (lv.count(x) == 0) {
        fail(rhs_col, "variable " + x.to_string() + " of the right-hand side is not in the left");
      }
    }
    (void)start;
    pf_.rules.push_back(RewriteRule{std::move(d), std::move(lhs), std::move(rhs)});
  }

  void solve_decl() {
    Term lhs = term();
    expect(Tok::kEqQ, "'=?'");
    Term rhs = term();
    std::optional<Degree> threshold;
    if (at_word("threshold")) {
      take();
      threshold = degree();
    }
    expect_end();
    pf_.problems.push_back(Problem{std::move(lhs), std::move(rhs), std::move(threshold), line_});
  }

 private:
  bool is_var(const std::string& name) const {
    for (const Var& v : pf_.variables) {
      if (v.name == name) return true;
    }
    return false;
  }

  void check_symbol(const Token& name, std::size_t n) const {
    if (reserved(name.text)) fail(name.column, "reserved token '" + name.text + "'");
    if (!pf_.signature.contains(name.text)) fail(name.column, "unknown symbol '" + name.text + "'");
    const std::size_t declared = pf_.signature.arity(name.text).size();
    if (declared != n) {
      fail(name.column, "arity mismatch: " + name.text + " expects " + std::to_string(declared) +
                            " arguments, given " + std::to_string(n));
    }
  }

  Term primary() {
    if (at(Tok::kLParen)) {
      take();
      Term t = term();
      expect(Tok::kRParen, "')'");
      return t;
    }
    if (!at(Tok::kIdent) && !at(Tok::kOp)) fail(peek().column, "expected a term" + describe_next());
    const Token name = take();
    if (at(Tok::kLParen)) {
      take();
      std::vector<Term> args;
      if (!at(Tok::kRParen)) {
        args.push_back(term());
        while (at(Tok::kComma)) {
          take();
          args.push_back(term());
        }
      }
      expect(Tok::kRParen, "')'");
      if (is_var(name.text)) fail(name.column, "variable '" + name.text + "' applied to arguments");
      check_symbol(name, args.size());
      return Term::app(name.text, std::move(args));
    }
    if (name.kind == Tok::kIdent && is_var(name.text)) return Term::var(name.text);
    if (reserved(name.text)) fail(name.column, "reserved token '" + name.text + "'");
    if (!pf_.signature.contains(name.text)) {
      fail(name.column, "undeclared variable or unknown symbol '" + name.text + "'");
    }
    check_symbol(name, 0);
    return Term::app(name.text);
  }

  void lex(std::string_view text) {
    std::size_t i = 0;
    auto col = [&](std::size_t k) { return static_cast<int>(k + 1); };
    while (i < text.size()) {
      const char c = text[i];
      if (c == '#') break;
      if (std::isspace(static_cast<unsigned char>(c)) != 0) {
        ++i;
        continue;
      }
      const std::size_t start = i;
      if (ident_char(c)) {
        // A hyphen followed by a letter continues a name, as in lawvere-max.
        while (i < text.size() &&
               (ident_char(text[i]) ||
                (text[i] == '-' && i + 1 < text.size() &&
                 std::isalpha(static_cast<unsigned char>(text[i + 1])) != 0))) {
          ++i;
        }
        tokens_.push_back({Tok::kIdent, std::string(text.substr(start, i - start)), col(start)});
        continue;
      }
      if (op_char(c)) {
        while (i < text.size() && op_char(text[i])) ++i;
        tokens_.push_back({Tok::kOp, std::string(text.substr(start, i - start)), col(start)});
        continue;
      }
      if (text.substr(i, 2) == "->") {
        tokens_.push_back({Tok::kArrow, "->", col(i)});
        i += 2;
        continue;
      }
      if (text.substr(i, 2) == "=?") {
        tokens_.push_back({Tok::kEqQ, "=?", col(i)});
        i += 2;
        continue;
      }
      Tok k;
      switch (c) {
        case '(':
          k = Tok::kLParen;
          break;
        case ')':
          k = Tok::kRParen;
          break;
        case ',':
          k = Tok::kComma;
          break;
        case ':':
          k = Tok::kColon;
          break;
        case ';':
          k = Tok::kSemi;
          break;
        case '/':
          k = Tok::kSlash;
          break;
        default:
          fail(col(i), std::string("unexpected character '") + c + "'");
      }
      tokens_.push_back({k, std::string(1, c), col(i)});
      ++i;
    }
    tokens_.push_back({Tok::kEnd, "", col(text.size())});
  }

  const std::string& file_;
  int line_;
  ProblemFile& pf_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

ProblemFile parse_problem_file(std::string_view text, const std::string& file) {
  ProblemFile pf;
  bool have_quantale = false;
  int line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    begin = end + 1;

    LineParser p(line, file, line_no, pf);
    if (p.at(Tok::kEnd)) continue;
    const Token kw = p.expect(Tok::kIdent, "a statement keyword");
    if (kw.text == "quantale") {
      if (have_quantale) p.fail(kw.column, "duplicate quantale declaration");
      const Token name = p.expect(Tok::kIdent, "a quantale name");
      p.expect_end();
      auto kind = quantale_from_name(name.text);
      if (!kind) p.fail(name.column, "unknown quantale '" + name.text + "'");
      if (!pf.symbol_order.empty() || !pf.variables.empty() || !pf.rules.empty()) {
        p.fail(kw.column, "quantale must be declared before anything else");
      }
      pf.kind = *kind;
      pf.signature = Signature(*kind);
      have_quantale = true;
      continue;
    }
    if (!have_quantale) p.fail(kw.column, "missing quantale declaration before '" + kw.text + "'");
    if (kw.text == "var") {
      p.var_decl();
    } else if (kw.text == "fun") {
      p.fun_decl();
    } else if (kw.text == "rule") {
      p.rule_decl();
    } else if (kw.text == "solve") {
      p.solve_decl();
    } else if (kw.text == "confluent") {
      p.expect_end();
      pf.confluent = true;
    } else {
      p.fail(kw.column, "unknown statement '" + kw.text + "'");
    }
  }
  if (!have_quantale) throw ParseError(file, 1, 1, "missing quantale declaration");
  return pf;
}

Term parse_term(std::string_view text, const ProblemFile& context) {
  ProblemFile scratch = context;
  LineParser p(text, "<term>", 1, scratch);
  Term t = p.term();
  p.expect_end();
  return t;
}

std::string print_problem_file(const ProblemFile& pf) {
  std::ostringstream out;
  out << "quantale " << quantale_name(pf.kind) << "\n";
  if (!pf.variables.empty()) {
    out << "var";
    for (const Var& v : pf.variables) out << " " << v.to_string();
    out << ";\n";
  }
  for (const std::string& f : pf.symbol_order) {
    const auto& slots = pf.signature.arity(f);
    out << "fun " << f << "/" << slots.size();
    if (!slots.empty()) {
      out << " : (";
      for (std::size_t i = 0; i < slots.size(); ++i) {
        out << (i == 0 ? "" : ", ") << slots[i].to_string();
      }
      out << ")";
    }
    out << "\n";
  }
  if (pf.confluent) out << "confluent\n";
  for (const RewriteRule& r : pf.rules) {
    out << "rule " << r.degree.to_string() << " : " << r.lhs.to_string() << " -> "
        << r.rhs.to_string() << "\n";
  }
  for (const Problem& p : pf.problems) {
    out << "solve " << p.lhs.to_string() << " =? " << p.rhs.to_string();
    if (p.threshold) out << " threshold " << p.threshold->to_string();
    out << "\n";
  }
  return out.str();
}

}  // namespace gqn
