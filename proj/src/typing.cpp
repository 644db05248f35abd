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


#include "patternforge/typing.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "patternforge/expr.hpp"

namespace patternforge {

namespace {

constexpr const char* kUnknown = "unknown";
constexpr const char* kVoid = "void";

bool known(const std::string& t) { return !t.empty() && t != kUnknown && t != kVoid; }

class Typer {
 public:
  Typer(const ApiGraph& graph, const std::vector<Param>& context) : g_(graph) {
    scopes_.emplace_back();
    for (const auto& p : context) scopes_.back()[p.name] = p.type;
  }

  void set_collecting(bool on) { collecting_ = on; }
  void reset_scopes(const std::vector<Param>& context) {
    scopes_.clear();
    scopes_.emplace_back();
    for (const auto& p : context) scopes_.back()[p.name] = p.type;
    fields_.clear();
  }

  std::vector<Statement> statements(const std::vector<Statement>& in) {
    std::vector<Statement> out;
    out.reserve(in.size());
    for (const auto& s : in) out.push_back(statement(s));
    return out;
  }

  ExprPtr expr(const ExprPtr& e) { return type_expr(e); }

  std::optional<std::string> free_type(const std::string& name) const {
    auto it = constraints_.find(name);
    if (it == constraints_.end()) return std::nullopt;
    return it->second;
  }
  bool conflicting(const std::string& name) const { return conflicts_.count(name) > 0; }

 private:
  std::optional<std::string> lookup(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return f->second;
    }
    auto f = fields_.find(name);
    if (f != fields_.end()) return f->second;
    return std::nullopt;
  }

  bool is_free(const Expr& e) const {
    return e.kind == ExprKind::kVariable && !lookup(e.name).has_value();
  }

  void constrain(const std::string& name, const std::string& type) {
    if (!collecting_ || !known(type) || conflicts_.count(name)) return;
    auto it = constraints_.find(name);
    if (it == constraints_.end()) {
      constraints_[name] = type;
      return;
    }
    if (it->second == type) return;
    if (g_.has_type(it->second) && g_.has_type(type) &&
        (g_.is_assignable(it->second, type) || g_.is_assignable(type, it->second))) {
      return;
    }
    it->second = kUnknown;
    conflicts_.insert(name);
  }

  void constrain_value(const ExprPtr& value, const std::string& slot_type) {
    if (value && is_free(*value)) constrain(value->name, slot_type);
  }

  Statement statement(const Statement& s) {
    Statement out = s;
    switch (s.kind) {
      case StmtKind::kDeclaration:
        if (s.expr) {
          constrain_value(s.expr, s.type);
          out.expr = type_expr(s.expr);
        }
        scopes_.back()[s.name] = s.type;
        break;
      case StmtKind::kAssignment: {
        auto target = lookup(s.name);
        if (target) constrain_value(s.expr, *target);
        out.expr = type_expr(s.expr);
        if (!target) fields_[s.name] = known(out.expr->type) ? out.expr->type : kUnknown;
        break;
      }
      case StmtKind::kExpression:
        out.expr = type_expr(s.expr);
        break;
      case StmtKind::kIf:
      case StmtKind::kWhile:
        constrain_value(s.expr, "boolean");
        out.expr = type_expr(s.expr);
        out.body = block(s.body, {});
        break;
      case StmtKind::kTry:
        out.body = block(s.body, {});
        for (auto& c : out.catches) {
          std::map<std::string, std::string> vars;
          if (!c.var.empty()) vars[c.var] = c.type;
          c.body = block(c.body, vars);
        }
        break;
    }
    return out;
  }

  std::vector<Statement> block(const std::vector<Statement>& body,
                               std::map<std::string, std::string> vars) {
    scopes_.push_back(std::move(vars));
    auto out = statements(body);
    scopes_.pop_back();
    return out;
  }

  std::vector<ExprPtr> type_args(const std::vector<ExprPtr>& args) {
    std::vector<ExprPtr> out;
    out.reserve(args.size());
    for (const auto& a : args) out.push_back(type_expr(a));
    return out;
  }

  bool args_fit(const Node& m, const std::vector<ExprPtr>& args) const {
    if (m.params.size() != args.size()) return false;
    for (size_t i = 0; i < args.size(); ++i) {
      if (!g_.accepts(m.params[i].type, args[i]->type)) return false;
    }
    return true;
  }

  const Node* pick(const std::vector<const Node*>& cands, const std::vector<ExprPtr>& args) const {
    for (const Node* m : cands) {
      if (args_fit(*m, args)) return m;
    }
    return nullptr;
  }

  // A free argument that fits no overload still constrains against the only
  // overload of its arity, so contradictory uses surface as conflicts.
  void constrain_unmatched(const std::vector<const Node*>& cands, const std::vector<ExprPtr>& raw) {
    const Node* only = nullptr;
    for (const Node* m : cands) {
      if (m->params.size() != raw.size()) continue;
      if (only) return;
      only = m;
    }
    if (only) constrain_args(*only, raw);
  }

  void constrain_args(const Node& m, const std::vector<ExprPtr>& raw) {
    for (size_t i = 0; i < raw.size() && i < m.params.size(); ++i) {
      constrain_value(raw[i], m.params[i].type);
    }
  }

  ExprPtr type_expr(const ExprPtr& e) {
    if (!e) return e;
    switch (e->kind) {
      case ExprKind::kLiteral:
      case ExprKind::kNull:
        return e;
      case ExprKind::kPlaceholder:
        return e->annotated(e->owner);
      case ExprKind::kVariable: {
        if (auto t = lookup(e->name)) return e->annotated(t->empty() ? kUnknown : *t);
        auto c = constraints_.find(e->name);
        return e->annotated(c == constraints_.end() ? kUnknown : c->second);
      }
      case ExprKind::kEnumAccess: {
        if (const Node* c = g_.enum_constant(e->owner, e->name)) return e->annotated(e->owner, c->ref);
        if (const Node* f = g_.find_field(e->owner, e->name); f && f->is_static) {
          return Expr::static_field(e->owner, e->name)->annotated(f->field_type, f->ref);
        }
        return e->annotated(g_.is_enum(e->owner) ? e->owner : kUnknown);
      }
      case ExprKind::kConstructor: {
        auto args = type_args(e->args);
        auto ctors = g_.constructors_of(e->owner);
        const Node* ctor = pick(ctors, args);
        if (ctor) {
          constrain_args(*ctor, e->args);
        } else {
          constrain_unmatched(ctors, e->args);
        }
        auto out = e->with_children(nullptr, std::move(args));
        return out->annotated(e->owner, ctor ? ctor->ref : std::string());
      }
      case ExprKind::kFieldAccess: {
        if (e->is_static) {
          if (const Node* c = g_.enum_constant(e->owner, e->name)) {
            return Expr::enum_access(e->owner, e->name)->annotated(e->owner, c->ref);
          }
          const Node* f = g_.find_field(e->owner, e->name);
          return f ? e->annotated(f->field_type, f->ref) : e->annotated(kUnknown);
        }
        auto base = type_expr(e->base);
        const Node* f = known(base->type) ? g_.find_field(base->type, e->name) : nullptr;
        if (!f && !known(base->type)) {
          auto all = g_.fields_named(e->name);
          if (all.size() == 1) {
            f = all.front();
            if (is_free(*e->base)) constrain(e->base->name, f->owner);
          }
        }
        auto out = e->with_children(base, {});
        return f ? out->annotated(f->field_type, f->ref) : out->annotated(kUnknown);
      }
      case ExprKind::kMethodCall:
        return type_call(e);
    }
    return e;
  }

  ExprPtr type_call(const ExprPtr& e) {
    ExprPtr base = e->base ? type_expr(e->base) : nullptr;
    auto args = type_args(e->args);
    std::vector<const Node*> cands;
    if (e->is_static) {
      cands = g_.find_methods(e->owner, e->name);
    } else if (base && known(base->type)) {
      cands = g_.find_methods(base->type, e->name);
    } else {
      cands = g_.methods_named(e->name);
      if (base && is_free(*e->base)) {
        std::set<std::string> owners;
        for (const Node* m : cands) {
          if (m->params.size() == args.size() && !m->is_static) owners.insert(m->owner);
        }
        if (owners.size() == 1) constrain(e->base->name, *owners.begin());
      }
    }
    const Node* m = pick(cands, args);
    if (m) {
      constrain_args(*m, e->args);
    } else {
      constrain_unmatched(cands, e->args);
    }
    auto out = e->with_children(base, std::move(args));
    if (!m) return out->annotated(kUnknown);
    return out->annotated(m->return_type.empty() ? kVoid : m->return_type, m->ref);
  }

  const ApiGraph& g_;
  bool collecting_ = false;
  std::vector<std::map<std::string, std::string>> scopes_;
  std::map<std::string, std::string> fields_;
  std::map<std::string, std::string> constraints_;
  std::set<std::string> conflicts_;
};

bool check(const Expr& e, const ApiGraph& g) {
  auto child_ok = [&](const ExprPtr& c) { return c && check(*c, g); };
  auto fits = [&](const std::string& slot, const std::string& value) {
    if (value == "null") return !is_literal_type_name(slot) || slot == "String";
    if (!g.has_type(slot) || !g.has_type(value)) return false;
    return g.is_assignable(value, slot);
  };
  auto params_ok = [&](const Node& m) {
    if (m.params.size() != e.args.size()) return false;
    for (size_t i = 0; i < e.args.size(); ++i) {
      if (!child_ok(e.args[i]) || !fits(m.params[i].type, e.args[i]->type)) return false;
    }
    return true;
  };
  switch (e.kind) {
    case ExprKind::kLiteral:
    case ExprKind::kNull:
      return true;
    case ExprKind::kVariable:
    case ExprKind::kPlaceholder:
      return g.has_type(e.type);
    case ExprKind::kEnumAccess:
      return g.enum_constant(e.owner, e.name) != nullptr && e.type == e.owner;
    case ExprKind::kConstructor: {
      const Node* m = g.member(e.member_ref);
      return m && m->is_constructor && m->owner == e.owner && !e.base && e.type == e.owner &&
             params_ok(*m);
    }
    case ExprKind::kFieldAccess: {
      const Node* f = g.member(e.member_ref);
      if (!f || f->kind != NodeKind::kField || f->is_static != e.is_static) return false;
      if (e.type != f->field_type || e.name != f->name) return false;
      if (f->is_static) return !e.base;
      return child_ok(e.base) && fits(f->owner, e.base->type);
    }
    case ExprKind::kMethodCall: {
      const Node* m = g.member(e.member_ref);
      if (!m || m->kind != NodeKind::kMethod || m->is_constructor || m->name != e.name) return false;
      if (m->is_static != e.is_static || e.type != (m->return_type.empty() ? kVoid : m->return_type)) {
        return false;
      }
      if (m->is_static) {
        if (e.base) return false;
      } else if (!child_ok(e.base) || !fits(m->owner, e.base->type)) {
        return false;
      }
      return params_ok(*m);
    }
  }
  return false;
}

}  // namespace

ScsExample annotate_example(const ScsExample& example, const ApiGraph& graph) {
  Typer typer(graph, example.context_params);
  typer.set_collecting(true);
  typer.statements(example.statements);
  typer.set_collecting(false);
  typer.reset_scopes(example.context_params);
  ScsExample out = example;
  out.statements = typer.statements(example.statements);
  out.conflicting_vars.clear();
  for (auto& fv : out.free_vars) {
    fv.type = typer.free_type(fv.name).value_or(kUnknown);
    if (typer.conflicting(fv.name)) out.conflicting_vars.push_back(fv.name);
  }
  return out;
}

std::vector<ScsExample> annotate_corpus(const std::vector<ScsExample>& corpus,
                                        const ApiGraph& graph) {
  std::vector<ScsExample> out;
  out.reserve(corpus.size());
  for (const auto& ex : corpus) out.push_back(annotate_example(ex, graph));
  return out;
}

ExprPtr annotate_expression(const ExprPtr& expr, const std::vector<Param>& scope,
                            const ApiGraph& graph) {
  Typer typer(graph, scope);
  return typer.expr(expr);
}

bool type_checks(const Expr& expr, const ApiGraph& graph, const std::string& target) {
  if (!check(expr, graph)) return false;
  if (target.empty()) return true;
  if (expr.type == "null") return !is_literal_type_name(target) || target == "String";
  if (!graph.has_type(expr.type) || !graph.has_type(target)) return false;
  return graph.is_assignable(expr.type, target);
}

}  // namespace patternforge
