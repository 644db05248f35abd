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


#include "patternforge/printer.hpp"

#include "patternforge/errors.hpp"

namespace patternforge {

namespace {

void print_block(const std::vector<Statement>& stmts, int indent, std::string& out);

void print_statement(const Statement& s, int indent, std::string& out) {
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  switch (s.kind) {
    case StmtKind::kDeclaration:
      out += pad + s.type + " " + s.name;
      if (s.expr) out += " = " + to_string(*s.expr);
      out += ";\n";
      return;
    case StmtKind::kAssignment:
      out += pad + s.name + " = " + to_string(*s.expr) + ";\n";
      return;
    case StmtKind::kExpression:
      out += pad + to_string(*s.expr) + ";\n";
      return;
    case StmtKind::kIf:
    case StmtKind::kWhile:
      out += pad + (s.kind == StmtKind::kIf ? "if (" : "while (") + to_string(*s.expr) + ") {\n";
      print_block(s.body, indent + 1, out);
      out += pad + "}\n";
      return;
    case StmtKind::kTry:
      out += pad + "try {\n";
      print_block(s.body, indent + 1, out);
      for (const auto& c : s.catches) {
        out += pad + "} catch (" + c.type + (c.var.empty() ? "" : " " + c.var) + ") {\n";
        print_block(c.body, indent + 1, out);
      }
      out += pad + "}\n";
      return;
  }
}

void print_block(const std::vector<Statement>& stmts, int indent, std::string& out) {
  for (const auto& s : stmts) print_statement(s, indent, out);
}

}  // namespace

std::string print(const std::vector<Statement>& statements) {
  std::string out;
  print_block(statements, 0, out);
  return out;
}

std::string print(const ScsExample& example) { return print(example.statements); }

std::string print(const Expr& expr) { return to_string(expr); }

std::string print_corpus_entry(const ScsExample& example) {
  std::string out = "#example " + example.id + " (";
  for (size_t i = 0; i < example.context_params.size(); ++i) {
    if (i > 0) out += ", ";
    out += example.context_params[i].name + ":" + example.context_params[i].type;
  }
  out += ")\n" + print(example) + "#end\n";
  return out;
}

MethodRefParts split_method_ref(const std::string& ref) {
  MethodRefParts parts;
  auto paren = ref.find('(');
  std::string head = ref.substr(0, paren);
  auto dot = head.rfind('.');
  if (dot == std::string::npos) {
    parts.name = head;
  } else {
    parts.owner = head.substr(0, dot);
    parts.name = head.substr(dot + 1);
  }
  if (paren != std::string::npos) {
    auto close = ref.rfind(')');
    std::string inner = ref.substr(paren + 1, close == std::string::npos ? std::string::npos
                                                                         : close - paren - 1);
    size_t start = 0;
    while (!inner.empty() && start <= inner.size()) {
      auto comma = inner.find(',', start);
      parts.param_types.push_back(inner.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return parts;
}

std::vector<Statement> build_blocks(const std::vector<std::string>& tokens,
                                    const CallEmitter& emit_call,
                                    const std::function<bool(int call_index)>& is_condition) {
  struct Open {
    Statement stmt;
    TokenKind closer;
    bool in_catch = false;
    bool awaiting_condition = false;
  };
  std::vector<Statement> top;
  std::vector<Open> open;
  auto sink = [&]() -> std::vector<Statement>& {
    if (open.empty()) return top;
    Open& o = open.back();
    return o.in_catch ? o.stmt.catches.back().body : o.stmt.body;
  };
  auto close_one = [&] {
    Statement done = std::move(open.back().stmt);
    open.pop_back();
    sink().push_back(std::move(done));
  };
  int call_index = 0;
  for (const auto& text : tokens) {
    TokenKind k = token_kind(text);
    // Only a call directly after IF or WHILE can be the condition.
    if (k != TokenKind::kCall && !open.empty()) open.back().awaiting_condition = false;
    switch (k) {
      case TokenKind::kCall: {
        // Hoisted declarations must precede the outermost open block, which
        // is only appended to `top` when it closes.
        std::vector<Statement> hoisted;
        std::vector<Statement>& target = open.empty() ? top : hoisted;
        std::vector<Statement> local;
        const int index = call_index++;
        emit_call(index, open.empty() ? top : local, target);
        if (!open.empty()) {
          for (auto& s : hoisted) top.push_back(std::move(s));
          Open& o = open.back();
          if (o.awaiting_condition && is_condition && is_condition(index) && local.size() == 1 &&
              local[0].kind == StmtKind::kExpression) {
            o.stmt.expr = local[0].expr;
            local.clear();
          }
          o.awaiting_condition = false;
          for (auto& s : local) sink().push_back(std::move(s));
        }
        break;
      }
      case TokenKind::kIf:
      case TokenKind::kWhile: {
        Open o;
        o.stmt.kind = k == TokenKind::kIf ? StmtKind::kIf : StmtKind::kWhile;
        o.stmt.expr = Expr::placeholder("boolean");
        o.closer = k == TokenKind::kIf ? TokenKind::kEndIf : TokenKind::kEndWhile;
        o.awaiting_condition = true;
        open.push_back(std::move(o));
        break;
      }
      case TokenKind::kTry: {
        Open o;
        o.stmt.kind = StmtKind::kTry;
        o.closer = TokenKind::kEndTry;
        open.push_back(std::move(o));
        break;
      }
      case TokenKind::kCatch: {
        if (open.empty() || open.back().stmt.kind != StmtKind::kTry) break;
        CatchClause c;
        c.type = text.substr(6, text.size() - 7);
        c.var = "e";
        open.back().stmt.catches.push_back(std::move(c));
        open.back().in_catch = true;
        break;
      }
      case TokenKind::kEndIf:
      case TokenKind::kEndWhile:
      case TokenKind::kEndTry:
        if (!open.empty() && open.back().closer == k) {
          if (k == TokenKind::kEndTry && open.back().stmt.catches.empty()) {
            open.back().stmt.catches.push_back({"Exception", "e", {}});
          }
          close_one();
        }
        break;
    }
  }
  while (!open.empty()) {
    if (open.back().stmt.kind == StmtKind::kTry && open.back().stmt.catches.empty()) {
      open.back().stmt.catches.push_back({"Exception", "e", {}});
    }
    close_one();
  }
  return top;
}

std::string print(const ScsPattern& pattern) {
  auto body = build_blocks(pattern.tokens, [&](int i, std::vector<Statement>& block,
                                               std::vector<Statement>&) {
    if (i >= static_cast<int>(pattern.calls.size())) return;
    const CallTemplate& call = pattern.calls[i];
    MethodRefParts ref = split_method_ref(call.method_ref);
    auto hole_expr = [&](const std::string& id) {
      const Hole* h = pattern.find_hole(id);
      return Expr::placeholder(h ? h->declared_type : "Object");
    };
    std::vector<ExprPtr> args;
    for (const auto& id : call.arg_holes) args.push_back(hole_expr(id));
    Statement s;
    s.kind = StmtKind::kExpression;
    if (ref.is_constructor()) {
      s.expr = Expr::constructor(ref.owner, std::move(args));
    } else if (call.receiver_hole) {
      s.expr = Expr::method_call(hole_expr(*call.receiver_hole), ref.name, std::move(args));
    } else {
      s.expr = Expr::static_call(ref.owner, ref.name, std::move(args));
    }
    block.push_back(std::move(s));
  });
  return print(body);
}

}  // namespace patternforge
