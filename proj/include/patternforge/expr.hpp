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

#ifndef PATTERNFORGE_EXPR_HPP_
#define PATTERNFORGE_EXPR_HPP_

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace patternforge {

enum class ExprKind {
  kLiteral,
  kNull,
  kVariable,
  kEnumAccess,
  kConstructor,
  kFieldAccess,
  kMethodCall,
  // A typed hole the synthesizer could not (or should not) complete.
  kPlaceholder,
};

enum class LiteralType { kInt, kLong, kShort, kDouble, kBoolean, kChar, kString };

std::string_view literal_type_name(LiteralType t);
std::optional<LiteralType> literal_type_from_name(std::string_view type_name);
// int, long, short, double, boolean, char and String.
bool is_literal_type_name(std::string_view type_name);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable expression tree node. Children are shared, so subtrees can be
// reused across candidates without copying.
//
// Field use per kind:
//   kLiteral      name = canonical lexeme, literal_type
//   kNull         -
//   kVariable     name
//   kEnumAccess   owner = enum class, name = constant
//   kConstructor  owner = constructed type, args
//   kFieldAccess  name = field; base, or owner when is_static
//   kMethodCall   name = method; base, or owner when is_static, args;
//                 neither base nor static means an implicit-this call
//   kPlaceholder  owner = placeholder type
//
// `type` and `member_ref` are annotations filled in by typing against an
// ApiGraph (or by the synthesizer). Empty `type` means "not yet typed";
// "unknown" means typing was attempted and failed.
struct Expr {
  ExprKind kind = ExprKind::kNull;
  std::string name;
  std::string owner;
  LiteralType literal_type = LiteralType::kInt;
  bool is_static = false;
  ExprPtr base;
  std::vector<ExprPtr> args;
  std::string type;
  std::string member_ref;

  static ExprPtr literal(std::string lexeme, LiteralType t);
  static ExprPtr null_const();
  static ExprPtr variable(std::string name, std::string type = {});
  static ExprPtr enum_access(std::string enum_type, std::string constant);
  static ExprPtr constructor(std::string type, std::vector<ExprPtr> args);
  static ExprPtr field_access(ExprPtr base, std::string field);
  static ExprPtr static_field(std::string owner, std::string field);
  static ExprPtr method_call(ExprPtr receiver, std::string method,
                             std::vector<ExprPtr> args);
  static ExprPtr static_call(std::string owner, std::string method,
                             std::vector<ExprPtr> args);
  static ExprPtr implicit_call(std::string method, std::vector<ExprPtr> args);
  static ExprPtr placeholder(std::string type);

  // Copy of this node with the given annotations.
  ExprPtr annotated(std::string produced_type, std::string ref = {}) const;
  // Copy of this node with new children (base may be null).
  ExprPtr with_children(ExprPtr new_base, std::vector<ExprPtr> new_args) const;
};

// Structural equality, annotations included.
bool operator==(const Expr& a, const Expr& b);
bool same_tree(const ExprPtr& a, const ExprPtr& b);

// Canonical text: single spaces, no trailing semicolon, placeholders as
// U+27E8 Type U+27E9, short literals as "(short) n".
std::string to_string(const Expr& e);
inline std::string to_string(const ExprPtr& e) { return e ? to_string(*e) : std::string(); }

// Equality of canonical prints; what co-reference and example matching use.
bool same_expression(const ExprPtr& a, const ExprPtr& b);

// Nesting depth; leaves (including enum accesses and placeholders) count 1
// and a static receiver costs nothing.
int depth(const Expr& e);
int count_placeholders(const Expr& e);
// Names of variable leaves in left-to-right order, with duplicates.
std::vector<std::string> variable_names(const Expr& e);
// Pre-order visit of every node.
void visit(const ExprPtr& e, const std::function<void(const ExprPtr&)>& fn);

// A placeholder standing for a user-typed constant rather than a failed
// synthesis.
bool is_constant_slot(const Expr& e);

}  // namespace patternforge

#endif  // PATTERNFORGE_EXPR_HPP_
