// Copyright 2026 The PatternForge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef PATTERNFORGE_SCS_HPP_
#define PATTERNFORGE_SCS_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "patternforge/expr.hpp"

namespace patternforge {

// A typed name: a context parameter, a local, or an inferred free variable.
struct Param {
  std::string name;
  std::string type;

  friend bool operator==(const Param&, const Param&) = default;
};

enum class StmtKind { kDeclaration, kAssignment, kExpression, kIf, kWhile, kTry };

struct Statement;

struct CatchClause {
  std::string type;
  std::string var;  // may be empty
  std::vector<Statement> body;

  friend bool operator==(const CatchClause&, const CatchClause&);
};

struct Statement {
  StmtKind kind = StmtKind::kExpression;
  std::string type;  // kDeclaration
  std::string name;  // kDeclaration, kAssignment
  ExprPtr expr;      // initializer, assigned value, expression or condition
  std::vector<Statement> body;
  std::vector<CatchClause> catches;  // kTry

  friend bool operator==(const Statement& a, const Statement& b);
};

struct ScsExample {
  std::string id;
  std::vector<Param> context_params;
  std::vector<Statement> statements;
  std::optional<std::string> source_uri;
  // Identifiers that are neither declared, assigned, nor context params.
  // Types stay empty until typed against an ApiGraph, then hold the inferred
  // type or "unknown".
  std::vector<Param> free_vars;
  // Free variables whose uses constrained them to conflicting types.
  std::vector<std::string> conflicting_vars;

  friend bool operator==(const ScsExample&, const ScsExample&) = default;
};

enum class TokenKind { kCall, kIf, kEndIf, kWhile, kEndWhile, kTry, kCatch, kEndTry };

// One element of a linearized example. `site` points at the call node for
// kCall tokens and is null otherwise.
struct SeqToken {
  TokenKind kind = TokenKind::kCall;
  std::string text;
  ExprPtr site;
};

TokenKind token_kind(std::string_view text);
bool is_call_token(std::string_view text);

enum class HoleRole { kReceiver, kParam };

struct Hole {
  std::string id;
  int call_index = 0;
  HoleRole role = HoleRole::kReceiver;
  int param_index = -1;  // kParam only
  std::string declared_type;

  friend bool operator==(const Hole&, const Hole&) = default;
};

enum class ControlContext { kPlain, kIf, kWhile, kTry };
std::string_view control_context_name(ControlContext c);

struct CallTemplate {
  std::string method_ref;
  std::optional<std::string> receiver_hole;
  std::vector<std::string> arg_holes;
  ControlContext context = ControlContext::kPlain;
  int token_index = 0;  // position of the call in ScsPattern::tokens

  friend bool operator==(const CallTemplate&, const CallTemplate&) = default;
};

struct ScsPattern {
  std::string id;
  // Full mined sequence, control tokens included.
  std::vector<std::string> tokens;
  std::vector<CallTemplate> calls;
  std::vector<Hole> holes;
  int support = 0;
  std::string description;

  const Hole* find_hole(std::string_view hole_id) const;

  friend bool operator==(const ScsPattern&, const ScsPattern&) = default;
};

}  // namespace patternforge

#endif  // PATTERNFORGE_SCS_HPP_
