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


#include "patternforge/expr.hpp"

#include <algorithm>

namespace patternforge {

namespace {

constexpr std::string_view kPlaceholderOpen = "\xE2\x9F\xA8";   // U+27E8
constexpr std::string_view kPlaceholderClose = "\xE2\x9F\xA9";  // U+27E9

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

void append_args(std::string& out, const std::vector<ExprPtr>& args) {
  out += '(';
  for (size_t i = 0; i < args.size(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(*args[i]);
  }
  out += ')';
}

}  // namespace

std::string_view literal_type_name(LiteralType t) {
  switch (t) {
    case LiteralType::kInt: return "int";
    case LiteralType::kLong: return "long";
    case LiteralType::kShort: return "short";
    case LiteralType::kDouble: return "double";
    case LiteralType::kBoolean: return "boolean";
    case LiteralType::kChar: return "char";
    case LiteralType::kString: return "String";
  }
  return "int";
}

std::optional<LiteralType> literal_type_from_name(std::string_view n) {
  if (n == "int") return LiteralType::kInt;
  if (n == "long") return LiteralType::kLong;
  if (n == "short") return LiteralType::kShort;
  if (n == "double") return LiteralType::kDouble;
  if (n == "boolean") return LiteralType::kBoolean;
  if (n == "char") return LiteralType::kChar;
  if (n == "String") return LiteralType::kString;
  return std::nullopt;
}

bool is_literal_type_name(std::string_view n) {
  return literal_type_from_name(n).has_value();
}

ExprPtr Expr::literal(std::string lexeme, LiteralType t) {
  Expr e;
  e.kind = ExprKind::kLiteral;
  e.name = std::move(lexeme);
  e.literal_type = t;
  e.type = std::string(literal_type_name(t));
  return make(std::move(e));
}

ExprPtr Expr::null_const() {
  Expr e;
  e.kind = ExprKind::kNull;
  e.type = "null";
  return make(std::move(e));
}

ExprPtr Expr::variable(std::string name, std::string type) {
  Expr e;
  e.kind = ExprKind::kVariable;
  e.name = std::move(name);
  e.type = std::move(type);
  return make(std::move(e));
}

ExprPtr Expr::enum_access(std::string enum_type, std::string constant) {
  Expr e;
  e.kind = ExprKind::kEnumAccess;
  e.owner = std::move(enum_type);
  e.name = std::move(constant);
  e.is_static = true;
  return make(std::move(e));
}

ExprPtr Expr::constructor(std::string type, std::vector<ExprPtr> args) {
  Expr e;
  e.kind = ExprKind::kConstructor;
  e.owner = type;
  e.args = std::move(args);
  e.type = std::move(type);
  return make(std::move(e));
}

ExprPtr Expr::field_access(ExprPtr base, std::string field) {
  Expr e;
  e.kind = ExprKind::kFieldAccess;
  e.base = std::move(base);
  e.name = std::move(field);
  return make(std::move(e));
}

ExprPtr Expr::static_field(std::string owner, std::string field) {
  Expr e;
  e.kind = ExprKind::kFieldAccess;
  e.owner = std::move(owner);
  e.name = std::move(field);
  e.is_static = true;
  return make(std::move(e));
}

ExprPtr Expr::method_call(ExprPtr receiver, std::string method,
                          std::vector<ExprPtr> args) {
  Expr e;
  e.kind = ExprKind::kMethodCall;
  e.base = std::move(receiver);
  e.name = std::move(method);
  e.args = std::move(args);
  return make(std::move(e));
}

ExprPtr Expr::static_call(std::string owner, std::string method,
                          std::vector<ExprPtr> args) {
  Expr e;
  e.kind = ExprKind::kMethodCall;
  e.owner = std::move(owner);
  e.name = std::move(method);
  e.args = std::move(args);
  e.is_static = true;
  return make(std::move(e));
}

ExprPtr Expr::implicit_call(std::string method, std::vector<ExprPtr> args) {
  Expr e;
  e.kind = ExprKind::kMethodCall;
  e.name = std::move(method);
  e.args = std::move(args);
  return make(std::move(e));
}

ExprPtr Expr::placeholder(std::string type) {
  Expr e;
  e.kind = ExprKind::kPlaceholder;
  e.owner = type;
  e.type = std::move(type);
  return make(std::move(e));
}

ExprPtr Expr::annotated(std::string produced_type, std::string ref) const {
  Expr e = *this;
  e.type = std::move(produced_type);
  e.member_ref = std::move(ref);
  return make(std::move(e));
}

ExprPtr Expr::with_children(ExprPtr new_base, std::vector<ExprPtr> new_args) const {
  Expr e = *this;
  e.base = std::move(new_base);
  e.args = std::move(new_args);
  return make(std::move(e));
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.name != b.name || a.owner != b.owner ||
      a.is_static != b.is_static || a.type != b.type ||
      a.member_ref != b.member_ref || a.args.size() != b.args.size()) {
    return false;
  }
  if (a.kind == ExprKind::kLiteral && a.literal_type != b.literal_type) return false;
  if (!same_tree(a.base, b.base)) return false;
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (!same_tree(a.args[i], b.args[i])) return false;
  }
  return true;
}

bool same_tree(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

std::string to_string(const Expr& e) {
  std::string out;
  switch (e.kind) {
    case ExprKind::kLiteral:
      if (e.literal_type == LiteralType::kShort) return "(short) " + e.name;
      return e.name;
    case ExprKind::kNull:
      return "null";
    case ExprKind::kVariable:
      return e.name;
    case ExprKind::kEnumAccess:
      return e.owner + "." + e.name;
    case ExprKind::kConstructor:
      out = "new " + e.owner;
      append_args(out, e.args);
      return out;
    case ExprKind::kFieldAccess:
      return (e.base ? to_string(*e.base) : e.owner) + "." + e.name;
    case ExprKind::kMethodCall:
      if (e.base) {
        out = to_string(*e.base) + ".";
      } else if (e.is_static) {
        out = e.owner + ".";
      }
      out += e.name;
      append_args(out, e.args);
      return out;
    case ExprKind::kPlaceholder:
      out.append(kPlaceholderOpen);
      out += e.owner;
      out.append(kPlaceholderClose);
      return out;
  }
  return out;
}

bool same_expression(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return to_string(*a) == to_string(*b);
}

int depth(const Expr& e) {
  int child = 0;
  if (e.base) child = depth(*e.base);
  for (const auto& a : e.args) child = std::max(child, depth(*a));
  return 1 + child;
}

int count_placeholders(const Expr& e) {
  int n = e.kind == ExprKind::kPlaceholder ? 1 : 0;
  if (e.base) n += count_placeholders(*e.base);
  for (const auto& a : e.args) n += count_placeholders(*a);
  return n;
}

std::vector<std::string> variable_names(const Expr& e) {
  std::vector<std::string> out;
  std::function<void(const Expr&)> walk = [&](const Expr& x) {
    if (x.kind == ExprKind::kVariable) out.push_back(x.name);
    if (x.base) walk(*x.base);
    for (const auto& a : x.args) walk(*a);
  };
  walk(e);
  return out;
}

void visit(const ExprPtr& e, const std::function<void(const ExprPtr&)>& fn) {
  if (!e) return;
  fn(e);
  visit(e->base, fn);
  for (const auto& a : e->args) visit(a, fn);
}

bool is_constant_slot(const Expr& e) {
  return e.kind == ExprKind::kPlaceholder && is_literal_type_name(e.owner);
}

}  // namespace patternforge
