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


#include "patternforge/scs.hpp"

namespace patternforge {

bool operator==(const CatchClause& a, const CatchClause& b) {
  return a.type == b.type && a.var == b.var && a.body == b.body;
}

bool operator==(const Statement& a, const Statement& b) {
  return a.kind == b.kind && a.type == b.type && a.name == b.name &&
         same_tree(a.expr, b.expr) && a.body == b.body && a.catches == b.catches;
}

TokenKind token_kind(std::string_view text) {
  if (text == "IF") return TokenKind::kIf;
  if (text == "END-IF") return TokenKind::kEndIf;
  if (text == "WHILE") return TokenKind::kWhile;
  if (text == "END-WHILE") return TokenKind::kEndWhile;
  if (text == "TRY") return TokenKind::kTry;
  if (text == "END-TRY") return TokenKind::kEndTry;
  if (text.starts_with("CATCH(")) return TokenKind::kCatch;
  return TokenKind::kCall;
}

bool is_call_token(std::string_view text) { return token_kind(text) == TokenKind::kCall; }

std::string_view control_context_name(ControlContext c) {
  switch (c) {
    case ControlContext::kPlain: return "plain";
    case ControlContext::kIf: return "if";
    case ControlContext::kWhile: return "while";
    case ControlContext::kTry: return "try";
  }
  return "plain";
}

const Hole* ScsPattern::find_hole(std::string_view hole_id) const {
  for (const auto& h : holes) {
    if (h.id == hole_id) return &h;
  }
  return nullptr;
}

}  // namespace patternforge
