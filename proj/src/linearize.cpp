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


#include "patternforge/linearize.hpp"

namespace patternforge {

namespace {

void calls_of(const ExprPtr& e, std::vector<SeqToken>& out) {
  if (!e) return;
  calls_of(e->base, out);
  for (const auto& a : e->args) calls_of(a, out);
  if (e->kind == ExprKind::kMethodCall || e->kind == ExprKind::kConstructor) {
    out.push_back({TokenKind::kCall, call_token_text(*e), e});
  }
}

void walk(const std::vector<Statement>& stmts, std::vector<SeqToken>& out) {
  for (const auto& s : stmts) {
    switch (s.kind) {
      case StmtKind::kDeclaration:
      case StmtKind::kAssignment:
      case StmtKind::kExpression:
        calls_of(s.expr, out);
        break;
      case StmtKind::kIf:
        out.push_back({TokenKind::kIf, "IF", nullptr});
        calls_of(s.expr, out);
        walk(s.body, out);
        out.push_back({TokenKind::kEndIf, "END-IF", nullptr});
        break;
      case StmtKind::kWhile:
        out.push_back({TokenKind::kWhile, "WHILE", nullptr});
        calls_of(s.expr, out);
        walk(s.body, out);
        out.push_back({TokenKind::kEndWhile, "END-WHILE", nullptr});
        break;
      case StmtKind::kTry:
        out.push_back({TokenKind::kTry, "TRY", nullptr});
        walk(s.body, out);
        for (const auto& c : s.catches) {
          out.push_back({TokenKind::kCatch, "CATCH(" + c.type + ")", nullptr});
          walk(c.body, out);
        }
        out.push_back({TokenKind::kEndTry, "END-TRY", nullptr});
        break;
    }
  }
}

}  // namespace

std::vector<SeqToken> linearize(const ScsExample& example) {
  std::vector<SeqToken> out;
  walk(example.statements, out);
  return out;
}

std::vector<std::string> token_texts(const std::vector<SeqToken>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.text);
  return out;
}

std::string call_token_text(const Expr& call) {
  if (!call.member_ref.empty()) return call.member_ref;
  if (call.kind == ExprKind::kConstructor) return call.owner + ".<init>";
  std::string owner = "?";
  if (call.is_static) {
    owner = call.owner;
  } else if (call.base && !call.base->type.empty() && call.base->type != "unknown") {
    owner = call.base->type;
  }
  return owner + "." + call.name;
}

}  // namespace patternforge
