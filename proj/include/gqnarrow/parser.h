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

#ifndef GQNARROW_PARSER_H_
#define GQNARROW_PARSER_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gqnarrow/error.h"
#include "gqnarrow/quantale.h"
#include "gqnarrow/rewrite.h"
#include "gqnarrow/term.h"

namespace gqn {

// A diagnostic of the form file:line:col: message.
class ParseError : public Error {
 public:
  ParseError(std::string file, int line, int column, const std::string& message);

  const std::string& file() const { return file_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::string file_;
  int line_;
  int column_;
  std::string message_;
};

struct Problem {
  Term lhs;
  Term rhs;
  std::optional<Degree> threshold;
  int line = 0;
};

struct ProblemFile {
  QuantaleKind kind = QuantaleKind::kLawvere;
  std::vector<Var> variables;
  Signature signature{QuantaleKind::kLawvere};
  std::vector<std::string> symbol_order;  // declaration order
  std::vector<RewriteRule> rules;
  std::vector<Problem> problems;
  bool confluent = false;

  GradedTrs trs() const;
};

// Grammar, one statement per line, `#` starts a comment:
//   quantale (bool|lawvere|lawvere-max|fuzzy-godel|fuzzy-product)
//   var x y z;
//   fun f/3 : (id, id, id)        arity list optional, defaults to id
//   rule <degree> : <term> -> <term>
//   solve <term> =? <term> [threshold <degree>]
//   confluent
// Symbols spelled with + and * may be written infix when binary:
// x + S(y) is +(x,S(y)); infix operators associate to the left.
ProblemFile parse_problem_file(std::string_view text, const std::string& file = "<input>");

// Parses a term against the declarations of `context`.
Term parse_term(std::string_view text, const ProblemFile& context);

// Renders a file that parses back to the same declarations.
std::string print_problem_file(const ProblemFile& pf);

}  // namespace gqn

#endif  // GQNARROW_PARSER_H_
