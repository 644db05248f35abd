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


#include "patternforge/session.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "patternforge/errors.hpp"
#include "patternforge/expr.hpp"
#include "patternforge/parser.hpp"
#include "patternforge/printer.hpp"
#include "patternforge/typing.hpp"

namespace patternforge {

using nlohmann::json;

namespace {

const std::regex& generated_name() {
  static const std::regex re("v[0-9]+");
  return re;
}

const std::regex& candidate_id() {
  static const std::regex re("c[0-9]+");
  return re;
}

std::string var_name(size_t n) { return "v" + std::to_string(n); }

json params_json(const std::vector<Param>& params) {
  json a = json::array();
  for (const auto& p : params) a.push_back({{"name", p.name}, {"type", p.type}});
  return a;
}

std::vector<Param> params_from_json(const json& a) {
  std::vector<Param> out;
  for (const auto& p : a) out.push_back({p.at("name").get<std::string>(), p.at("type").get<std::string>()});
  return out;
}

ExprPtr substitute(const ExprPtr& e, const std::map<std::string, ExprPtr>& vars) {
  if (!e) return e;
  if (e->kind == ExprKind::kVariable) {
    auto it = vars.find(e->name);
    return it == vars.end() ? e : it->second;
  }
  bool changed = false;
  ExprPtr base = e->base ? substitute(e->base, vars) : nullptr;
  changed |= base != e->base;
  std::vector<ExprPtr> args;
  for (const auto& a : e->args) {
    args.push_back(substitute(a, vars));
    changed |= args.back() != a;
  }
  return changed ? e->with_children(base, std::move(args)) : e;
}

// A typed literal for a constant typed by the user.
ExprPtr parse_constant(const std::string& text, const std::string& type) {
  auto target = literal_type_from_name(type);
  if (!target) {
    throw TypeMismatch("group of type " + type + " takes no custom constant");
  }
  ExprPtr e;
  try {
    e = parse_expression(text);
  } catch (const SyntaxError&) {
    throw TypeMismatch("'" + text + "' is not a constant");
  }
  if (e->kind == ExprKind::kNull) {
    if (type != "String") throw TypeMismatch("null does not fit " + type);
    return e;
  }
  if (e->kind != ExprKind::kLiteral) throw TypeMismatch("'" + text + "' is not a constant");
  if (e->literal_type == *target) return e;
  if (e->literal_type == LiteralType::kInt) {
    switch (*target) {
      case LiteralType::kShort: {
        long v = std::stol(e->name);
        if (v < -32768 || v > 32767) throw TypeMismatch(e->name + " does not fit short");
        return Expr::literal(e->name, LiteralType::kShort);
      }
      case LiteralType::kLong:
        return Expr::literal(e->name + "L", LiteralType::kLong);
      case LiteralType::kDouble:
        return Expr::literal(e->name + ".0", LiteralType::kDouble);
      default:
        break;
    }
  }
  throw TypeMismatch("a " + std::string(literal_type_name(e->literal_type)) +
                     " literal does not fit " + type);
}

// Lexical regions of a token sequence, mirroring build_blocks: every block
// body and catch body is its own region, region 0 being the top level.
struct Regions {
  std::vector<int> parent{-1};
  std::vector<int> of_call;

  explicit Regions(const std::vector<std::string>& tokens) {
    struct Open {
      int region;
      TokenKind closer;
      bool is_try;
    };
    std::vector<Open> open;
    auto current = [&] { return open.empty() ? 0 : open.back().region; };
    auto fresh = [&](int p) {
      parent.push_back(p);
      return static_cast<int>(parent.size()) - 1;
    };
    for (const auto& t : tokens) {
      TokenKind k = token_kind(t);
      switch (k) {
        case TokenKind::kCall:
          of_call.push_back(current());
          break;
        case TokenKind::kIf:
          open.push_back({fresh(current()), TokenKind::kEndIf, false});
          break;
        case TokenKind::kWhile:
          open.push_back({fresh(current()), TokenKind::kEndWhile, false});
          break;
        case TokenKind::kTry:
          open.push_back({fresh(current()), TokenKind::kEndTry, true});
          break;
        case TokenKind::kCatch:
          if (!open.empty() && open.back().is_try) {
            open.back().region = fresh(parent[static_cast<size_t>(open.back().region)]);
          }
          break;
        default:
          if (!open.empty() && open.back().closer == k) open.pop_back();
          break;
      }
    }
  }

  bool encloses(int outer, int inner) const {
    for (int r = inner; r >= 0; r = parent[static_cast<size_t>(r)]) {
      if (r == outer) return true;
    }
    return false;
  }
};

bool same_ranking(const ExampleRanking& a, const ExampleRanking& b) {
  if (a.seed != b.seed || a.order.size() != b.order.size()) return false;
  for (size_t i = 0; i < a.order.size(); ++i) {
    const auto& x = a.order[i];
    const auto& y = b.order[i];
    if (x.example_id != y.example_id || x.score != y.score || x.prior != y.prior) return false;
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Engine

Engine::Engine(ApiGraph graph, std::vector<ScsExample> corpus, std::vector<ScsPattern> patterns,
               EngineConfig cfg, std::optional<PopularityModel> popularity)
    : graph_(std::move(graph)),
      corpus_(annotate_corpus(corpus, graph_)),
      patterns_(std::move(patterns)),
      cfg_(cfg) {
  cfg_.synth.validate();
  cfg_.cluster.validate();
  popularity_ = popularity ? std::move(*popularity) : PopularityModel::fit(corpus_, graph_);
  for (size_t i = 0; i < corpus_.size(); ++i) example_index_.emplace(corpus_[i].id, i);
}

const ScsPattern& Engine::pattern(const std::string& id) const {
  for (const auto& p : patterns_) {
    if (p.id == id) return p;
  }
  throw UnknownPattern(id);
}

const ScsExample* Engine::example(const std::string& id) const {
  auto it = example_index_.find(id);
  return it == example_index_.end() ? nullptr : &corpus_[it->second];
}

std::shared_ptr<const PatternAnalysis> Engine::analysis(const std::string& pattern_id) const {
  const ScsPattern& p = pattern(pattern_id);
  {
    std::lock_guard<std::mutex> lock(cache_mu_);
    auto it = cache_.find(pattern_id);
    if (it != cache_.end()) return it->second;
  }
  // Computed outside the lock; a racing duplicate is identical and dropped.
  auto a = std::make_shared<const PatternAnalysis>(analyze_pattern(p, corpus_, graph_, cfg_.cluster));
  std::lock_guard<std::mutex> lock(cache_mu_);
  return cache_.emplace(pattern_id, std::move(a)).first->second;
}

// ---------------------------------------------------------------------------
// Session

Session Session::open(std::shared_ptr<const Engine> engine, std::string id,
                      const std::string& pattern_id, std::vector<Param> context, uint64_t seed) {
  const ScsPattern& pattern = engine->pattern(pattern_id);
  const ApiGraph& graph = engine->graph();
  for (const auto& call : pattern.calls) {
    if (!graph.member(call.method_ref)) {
      throw ModelMismatch("pattern " + pattern.id + " calls " + call.method_ref +
                          ", which the API model lacks");
    }
  }
  std::set<std::string> names;
  for (const auto& p : context) {
    if (!graph.has_type(p.type)) throw UnknownType(p.type);
    if (std::regex_match(p.name, generated_name())) {
      throw PreconditionError("context name '" + p.name + "' is reserved for generated variables");
    }
    if (!names.insert(p.name).second) {
      throw PreconditionError("duplicate context name '" + p.name + "'");
    }
  }

  Session s;
  s.engine_ = std::move(engine);
  s.id_ = std::move(id);
  s.pattern_ = &pattern;
  s.analysis_ = s.engine_->analysis(pattern_id);
  s.context_ = std::move(context);
  s.seed_ = seed;

  const PatternAnalysis& a = *s.analysis_;
  for (size_t e = 0; e < a.example_ids.size(); ++e) {
    std::vector<ExprPtr> row;
    double prior = 1.0;
    for (size_t g = 0; g < a.groups.size(); ++g) {
      row.push_back(group_expression(a, pattern, e, g));
      if (row.back()) prior *= score_expression(*row.back(), s.engine_->popularity());
    }
    s.group_exprs_.push_back(std::move(row));
    s.priors_.push_back(prior);
  }

  for (size_t g = 0; g < a.groups.size(); ++g) {
    GroupState gs;
    gs.group = a.groups[g];
    gs.group.description = describe_group(gs.group, pattern, graph);
    gs.var = var_name(g);
    s.state_.groups.push_back(std::move(gs));
  }
  s.state_.assignments.assign(a.groups.size(), std::nullopt);
  s.refresh_candidates();
  s.rerank();

  json ev = {{"event", "open"},
             {"session", s.id_},
             {"pattern_id", pattern_id},
             {"context", params_json(s.context_)},
             {"seed", seed}};
  s.events_.push_back(ev.dump());
  return s;
}

Session Session::replay(std::shared_ptr<const Engine> engine, std::string_view log) {
  std::istringstream in{std::string(log)};
  std::string line;
  std::optional<Session> s;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json ev;
    try {
      ev = json::parse(line);
    } catch (const json::exception& e) {
      throw PreconditionError("event log line " + std::to_string(line_no) + ": " + e.what());
    }
    const std::string kind = ev.value("event", "");
    if (!s) {
      if (kind != "open") throw PreconditionError("event log must start with an open event");
      s = open(engine, ev.at("session").get<std::string>(), ev.at("pattern_id").get<std::string>(),
               params_from_json(ev.at("context")), ev.at("seed").get<uint64_t>());
    } else if (kind == "fill") {
      s->fill(ev.at("group_id").get<std::string>(), ev.at("choice").get<std::string>());
    } else if (kind == "fill_expression") {
      s->fill_expression(ev.at("group_id").get<std::string>(),
                         ev.at("expression").get<std::string>());
    } else if (kind == "undo") {
      s->undo();
    } else {
      throw PreconditionError("event log line " + std::to_string(line_no) + ": unknown event '" +
                              kind + "'");
    }
  }
  if (!s) throw PreconditionError("empty event log");
  return std::move(*s);
}

size_t Session::group_index(const std::string& group_id) const {
  for (size_t g = 0; g < state_.groups.size(); ++g) {
    if (state_.groups[g].group.id == group_id) return g;
  }
  throw UnknownGroup(group_id);
}

std::vector<Param> Session::locals() const {
  std::vector<Param> out = context_;
  for (size_t g = 0; g < state_.groups.size(); ++g) {
    if (state_.assignments[g]) out.push_back({state_.groups[g].var, state_.groups[g].group.type});
  }
  return out;
}

ExprPtr Session::expand(const ExprPtr& expr) const {
  std::map<std::string, ExprPtr> vars;
  for (size_t g = 0; g < state_.groups.size(); ++g) {
    if (state_.assignments[g]) vars.emplace(state_.groups[g].var, state_.assignments[g]->expanded);
  }
  return substitute(expr, vars);
}

void Session::refresh_candidates() {
  const auto locs = locals();
  for (size_t g = 0; g < state_.groups.size(); ++g) {
    if (state_.assignments[g]) continue;
    GroupState& gs = state_.groups[g];
    auto start = std::chrono::steady_clock::now();
    auto ranked = synthesize(locs, gs.group.type, engine_->config().synth, engine_->graph(),
                             &engine_->popularity());
    gs.recommend_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    gs.candidates.clear();
    for (auto& b : gs.buckets) b.clear();
    for (size_t i = 0; i < ranked.size(); ++i) {
      gs.buckets[static_cast<size_t>(ranked[i].syntax_type)].push_back(i);
      gs.candidates.push_back({"c" + std::to_string(i), std::move(ranked[i])});
    }
  }
}

void Session::rerank() {
  std::map<size_t, ExprPtr> assigned;
  for (size_t g = 0; g < state_.assignments.size(); ++g) {
    if (state_.assignments[g]) assigned.emplace(g, state_.assignments[g]->expanded);
  }
  state_.ranking = rerank_examples(analysis_->example_ids, group_exprs_, priors_, assigned, seed_,
                                   engine_->config().rerank);
}

void Session::assign(size_t g, std::string choice, ExprPtr expr) {
  history_.push_back(state_);
  ExprPtr expanded = expand(expr);
  state_.assignments[g] = Assignment{std::move(choice), std::move(expr), std::move(expanded)};
  refresh_candidates();
  rerank();
}

void Session::fill(const std::string& group_id, const std::string& choice) {
  size_t g = group_index(group_id);
  if (state_.assignments[g]) throw PreconditionError("group " + group_id + " is already filled");
  const GroupState& gs = state_.groups[g];
  ExprPtr expr;
  if (std::regex_match(choice, candidate_id())) {
    for (const auto& c : gs.candidates) {
      if (c.id == choice) expr = c.candidate.expression;
    }
    if (!expr) throw PreconditionError("group " + group_id + " has no candidate " + choice);
  } else {
    for (const auto& c : gs.candidates) {
      if (c.candidate.text == choice) {
        expr = c.candidate.expression;
        break;
      }
    }
    if (!expr) expr = parse_constant(choice, gs.group.type);
  }
  assign(g, choice, std::move(expr));
  events_.push_back(json{{"event", "fill"}, {"group_id", group_id}, {"choice", choice}}.dump());
}

void Session::fill_expression(const std::string& group_id, const std::string& text) {
  size_t g = group_index(group_id);
  if (state_.assignments[g]) throw PreconditionError("group " + group_id + " is already filled");
  const std::string& type = state_.groups[g].group.type;
  const auto scope = locals();
  ExprPtr expr;
  try {
    expr = annotate_expression(parse_expression(text, scope), scope, engine_->graph());
  } catch (const SyntaxError& e) {
    throw TypeMismatch(std::string("unparsable expression: ") + e.what());
  }
  std::set<std::string> known;
  for (const auto& p : scope) known.insert(p.name);
  for (const auto& v : variable_names(*expr)) {
    if (!known.count(v)) throw TypeMismatch("'" + v + "' is not bound in this session");
  }
  if (!type_checks(*expr, engine_->graph(), type)) {
    throw TypeMismatch("'" + text + "' does not type-check as " + type);
  }
  assign(g, text, std::move(expr));
  events_.push_back(
      json{{"event", "fill_expression"}, {"group_id", group_id}, {"expression", text}}.dump());
}

void Session::undo() {
  if (history_.empty()) throw PreconditionError("nothing to undo");
  state_ = std::move(history_.back());
  history_.pop_back();
  events_.push_back(json{{"event", "undo"}}.dump());
}

bool Session::complete() const {
  return std::all_of(state_.assignments.begin(), state_.assignments.end(),
                     [](const auto& a) { return a.has_value(); });
}

bool Session::same_state(const Session& other) const {
  const State& a = state_;
  const State& b = other.state_;
  if (a.groups.size() != b.groups.size()) return false;
  for (size_t g = 0; g < a.groups.size(); ++g) {
    const auto& x = a.groups[g];
    const auto& y = b.groups[g];
    if (x.group.id != y.group.id || x.group.holes != y.group.holes || x.var != y.var ||
        x.buckets != y.buckets || x.candidates.size() != y.candidates.size()) {
      return false;
    }
    for (size_t i = 0; i < x.candidates.size(); ++i) {
      const auto& c = x.candidates[i];
      const auto& d = y.candidates[i];
      if (c.id != d.id || c.candidate.text != d.candidate.text ||
          c.candidate.popularity != d.candidate.popularity ||
          !same_tree(c.candidate.expression, d.candidate.expression)) {
        return false;
      }
    }
    const auto& p = a.assignments[g];
    const auto& q = b.assignments[g];
    if (p.has_value() != q.has_value()) return false;
    if (p && (p->choice != q->choice || !same_tree(p->expression, q->expression))) return false;
  }
  return same_ranking(a.ranking, b.ranking);
}

EmitResult Session::emit() const {
  const ScsPattern& p = *pattern_;
  const ApiGraph& graph = engine_->graph();
  const size_t n = state_.groups.size();

  std::map<std::string, size_t> group_of;
  for (size_t g = 0; g < n; ++g) {
    for (const auto& h : state_.groups[g].group.holes) group_of[h] = g;
  }
  std::map<std::string, ExprPtr> fixed;
  for (const auto& f : analysis_->freeze.fixed) fixed[f.hole_id] = f.value;
  std::map<std::string, int> bound;
  std::map<int, std::vector<int>> consumers;  // call -> calls using its result
  for (const auto& b : analysis_->freeze.bound) {
    bound[b.hole_id] = b.call_index;
    if (const Hole* h = p.find_hole(b.hole_id)) consumers[b.call_index].push_back(h->call_index);
  }
  const Regions regions(p.tokens);

  std::vector<bool> declared(n, false);
  std::function<void(size_t, std::vector<Statement>&)> declare_group =
      [&](size_t g, std::vector<Statement>& out) {
        if (declared[g]) return;
        declared[g] = true;
        const GroupState& gs = state_.groups[g];
        const auto& a = state_.assignments[g];
        ExprPtr value = a ? a->expression : Expr::placeholder(gs.group.type);
        for (const auto& v : variable_names(*value)) {
          for (size_t d = 0; d < n; ++d) {
            if (d != g && state_.groups[d].var == v) declare_group(d, out);
          }
        }
        Statement s;
        s.kind = StmtKind::kDeclaration;
        s.type = gs.group.type;
        s.name = gs.var;
        s.expr = value;
        out.push_back(std::move(s));
      };

  auto body = build_blocks(p.tokens, [&](int i, std::vector<Statement>& block,
                                         std::vector<Statement>& top_level) {
    if (i < 0 || static_cast<size_t>(i) >= p.calls.size()) return;
    const CallTemplate& call = p.calls[static_cast<size_t>(i)];
    auto value = [&](const std::string& hole_id) -> ExprPtr {
      if (auto it = fixed.find(hole_id); it != fixed.end()) return it->second;
      if (auto it = bound.find(hole_id); it != bound.end()) {
        return Expr::variable(var_name(n + static_cast<size_t>(it->second)));
      }
      if (auto it = group_of.find(hole_id); it != group_of.end()) {
        declare_group(it->second, top_level);
        return Expr::variable(state_.groups[it->second].var);
      }
      const Hole* h = p.find_hole(hole_id);
      return Expr::placeholder(h ? h->declared_type : "Object");
    };
    MethodRefParts ref = split_method_ref(call.method_ref);
    const Node* m = graph.member(call.method_ref);
    ExprPtr receiver = call.receiver_hole ? value(*call.receiver_hole) : nullptr;
    std::vector<ExprPtr> args;
    for (const auto& h : call.arg_holes) args.push_back(value(h));
    ExprPtr expr;
    if (ref.is_constructor()) {
      expr = Expr::constructor(ref.owner, std::move(args));
    } else if (receiver) {
      expr = Expr::method_call(receiver, ref.name, std::move(args));
    } else {
      expr = Expr::static_call(ref.owner, ref.name, std::move(args));
    }

    Statement s;
    auto used = consumers.find(i);
    if (used == consumers.end() || !m) {
      s.kind = StmtKind::kExpression;
      s.expr = expr;
      block.push_back(std::move(s));
      return;
    }
    const std::string result_type = m->produced_type();
    const std::string name = var_name(n + static_cast<size_t>(i));
    const int home = regions.of_call[static_cast<size_t>(i)];
    bool local = std::all_of(used->second.begin(), used->second.end(), [&](int k) {
      return k >= 0 && static_cast<size_t>(k) < regions.of_call.size() &&
             regions.encloses(home, regions.of_call[static_cast<size_t>(k)]);
    });
    if (local) {
      s.kind = StmtKind::kDeclaration;
      s.type = result_type;
      s.name = name;
      s.expr = expr;
    } else {
      Statement d;
      d.kind = StmtKind::kDeclaration;
      d.type = result_type;
      d.name = name;
      top_level.push_back(std::move(d));
      s.kind = StmtKind::kAssignment;
      s.name = name;
      s.expr = expr;
    }
    block.push_back(std::move(s));
  }, [&](int i) {
    const Node* m = static_cast<size_t>(i) < p.calls.size() ? graph.member(p.calls[static_cast<size_t>(i)].method_ref)
                                                            : nullptr;
    return m && m->return_type == "boolean";
  });
  // Groups whose holes sit in calls that never materialize still get declared.
  for (size_t g = 0; g < n; ++g) declare_group(g, body);

  EmitResult r;
  r.code = print(body);
  r.complete = r.code.find("\xE2\x9F\xA8") == std::string::npos;
  return r;
}

std::string Session::state_json(int top) const {
  const ApiGraph& graph = engine_->graph();
  json j;
  j["id"] = id_;
  j["pattern"] = {{"id", pattern_->id},
                  {"description", pattern_->description},
                  {"support", pattern_->support},
                  {"tokens", pattern_->tokens},
                  {"skeleton", print(*pattern_)}};
  j["context"] = params_json(context_);
  j["seed"] = seed_;
  j["complete"] = complete();
  j["history_depth"] = history_.size();

  json fixed = json::array();
  for (const auto& f : analysis_->freeze.fixed) {
    fixed.push_back({{"hole", f.hole_id}, {"value", to_string(f.value)}, {"frequency", f.frequency}});
  }
  j["fixed"] = fixed;
  json bound = json::array();
  for (const auto& b : analysis_->freeze.bound) {
    bound.push_back({{"hole", b.hole_id}, {"call", b.call_index}, {"frequency", b.frequency}});
  }
  j["bound"] = bound;

  json groups = json::array();
  for (size_t g = 0; g < state_.groups.size(); ++g) {
    const GroupState& gs = state_.groups[g];
    json cands = json::array();
    for (const auto& c : gs.candidates) {
      cands.push_back({{"id", c.id},
                       {"expression", c.candidate.text},
                       {"syntax_type", syntax_type_name(c.candidate.syntax_type)},
                       {"popularity", c.candidate.popularity},
                       {"placeholders", c.candidate.placeholder_count},
                       {"free_vars", c.candidate.free_var_count}});
    }
    json buckets = json::object();
    for (int t = 0; t < kSyntaxTypeCount; ++t) {
      json ids = json::array();
      for (size_t i : gs.buckets[static_cast<size_t>(t)]) ids.push_back(gs.candidates[i].id);
      buckets[std::string(syntax_type_name(static_cast<SyntaxType>(t)))] = ids;
    }
    json assignment = nullptr;
    if (const auto& a = state_.assignments[g]) {
      assignment = {{"choice", a->choice}, {"expression", to_string(a->expression)}};
    }
    groups.push_back({{"id", gs.group.id},
                      {"var", gs.var},
                      {"holes", gs.group.holes},
                      {"type", gs.group.type},
                      {"description", gs.group.description},
                      {"is_enum", graph.is_enum(gs.group.type)},
                      {"accepts_constant", is_literal_type_name(gs.group.type)},
                      {"assignment", assignment},
                      {"candidates", cands},
                      {"buckets", buckets}});
  }
  j["groups"] = groups;

  std::map<std::string, size_t> index;
  for (size_t e = 0; e < analysis_->example_ids.size(); ++e) index[analysis_->example_ids[e]] = e;
  json examples = json::array();
  const auto& order = state_.ranking.order;
  size_t limit = top < 0 ? order.size() : std::min(order.size(), static_cast<size_t>(top));
  for (size_t r = 0; r < limit; ++r) {
    const auto& re = order[r];
    json matches = json::object();
    size_t e = index.at(re.example_id);
    for (size_t g = 0; g < state_.groups.size(); ++g) {
      const auto& a = state_.assignments[g];
      if (!a) continue;
      const ExprPtr& mine = group_exprs_[e][g];
      std::string m = "none";
      if (mine && same_expression(mine, a->expanded)) {
        m = "exact";
      } else if (mine && root_key(*mine) == root_key(*a->expanded)) {
        m = "root";
      }
      matches[state_.groups[g].group.id] = m;
    }
    const ScsExample* ex = engine_->example(re.example_id);
    examples.push_back({{"rank", r + 1},
                        {"id", re.example_id},
                        {"score", re.score},
                        {"prior", re.prior},
                        {"matches", matches},
                        {"code", ex ? print(*ex) : std::string()}});
  }
  j["examples"] = examples;
  j["example_count"] = order.size();

  EmitResult code = emit();
  j["code"] = {{"text", code.code}, {"complete", code.complete}};
  return j.dump();
}

// ---------------------------------------------------------------------------
// Simulation

std::string SimulationReport::to_json() const {
  json ranks = json::array();
  for (const auto& r : candidate_ranks) ranks.push_back(r ? json(*r) : json(nullptr));
  json j = {{"pattern_id", pattern_id},
            {"goal", goal_example_id},
            {"seed", seed},
            {"initial_rank", initial_rank},
            {"trajectory", trajectory},
            {"final_rank", final_rank},
            {"candidate_ranks", ranks},
            {"mrr", mrr ? json(*mrr) : json(nullptr)},
            {"response_seconds", response_seconds},
            {"groups", group_ids},
            {"code", code}};
  return j.dump(2);
}

SimulationReport simulate(std::shared_ptr<const Engine> engine, const std::string& pattern_id,
                          const std::string& goal_example_id, uint64_t seed) {
  const ScsPattern& pattern = engine->pattern(pattern_id);
  const ScsExample* goal = engine->example(goal_example_id);
  if (!goal) throw PreconditionError("goal example '" + goal_example_id + "' is not in the corpus");
  auto analysis = engine->analysis(pattern_id);
  auto pos = std::find(analysis->example_ids.begin(), analysis->example_ids.end(), goal_example_id);
  if (pos == analysis->example_ids.end()) {
    throw NoEmbedding("pattern " + pattern_id + " does not embed in " + goal_example_id);
  }
  const size_t goal_index = static_cast<size_t>(pos - analysis->example_ids.begin());

  std::vector<Param> context;
  std::set<std::string> names;
  auto add = [&](const Param& p) {
    if (p.type.empty() || !engine->graph().has_type(p.type)) return;
    if (std::regex_match(p.name, generated_name())) return;
    if (names.insert(p.name).second) context.push_back(p);
  };
  for (const auto& p : goal->context_params) add(p);
  for (const auto& p : goal->free_vars) add(p);

  Session s = Session::open(engine, "sim-" + goal_example_id, pattern_id, context, seed);
  SimulationReport r;
  r.pattern_id = pattern_id;
  r.goal_example_id = goal_example_id;
  r.seed = seed;
  r.initial_rank = s.ranking().rank_of(goal_example_id);

  for (size_t g = 0; g < s.groups().size(); ++g) {
    const GroupState& gs = s.groups()[g];
    r.group_ids.push_back(gs.group.id);
    r.response_seconds.push_back(gs.recommend_seconds);
    ExprPtr want = group_expression(*analysis, pattern, goal_index, g);
    std::optional<int> rank;
    std::string pick;
    if (want) {
      const auto& bucket = gs.buckets[static_cast<size_t>(classify(*want))];
      const std::string text = to_string(want);
      for (size_t k = 0; k < bucket.size() && !rank; ++k) {
        const auto& c = gs.candidates[bucket[k]];
        if (to_string(s.expand(c.candidate.expression)) == text) {
          rank = static_cast<int>(k) + 1;
          pick = c.id;
        }
      }
      if (!rank && (want->kind == ExprKind::kLiteral || want->kind == ExprKind::kNull)) {
        const std::string slot = to_string(Expr::placeholder(gs.group.type));
        for (size_t k = 0; k < bucket.size() && !rank; ++k) {
          if (gs.candidates[bucket[k]].candidate.text == slot) rank = static_cast<int>(k) + 1;
        }
      }
    }
    r.candidate_ranks.push_back(rank);
    const std::string group_id = gs.group.id;
    if (!pick.empty()) {
      s.fill(group_id, pick);
    } else if (!want) {
      s.fill_expression(group_id, to_string(Expr::placeholder(gs.group.type)));
    } else {
      const std::string text = to_string(want);
      bool filled = false;
      if (want->kind == ExprKind::kLiteral || want->kind == ExprKind::kNull) {
        try {
          s.fill(group_id, text);
          filled = true;
        } catch (const TypeMismatch&) {
        }
      }
      if (!filled) {
        try {
          s.fill_expression(group_id, text);
        } catch (const TypeMismatch&) {
          s.fill_expression(group_id, to_string(Expr::placeholder(gs.group.type)));
        }
      }
    }
    r.trajectory.push_back(s.ranking().rank_of(goal_example_id));
  }
  r.final_rank = s.ranking().rank_of(goal_example_id);
  if (!r.candidate_ranks.empty()) r.mrr = mrr(r.candidate_ranks);
  r.code = s.emit_code();
  return r;
}

// ---------------------------------------------------------------------------
// SessionStore

SessionStore::SessionStore(std::shared_ptr<const Engine> engine,
                           std::optional<std::filesystem::path> data_dir)
    : engine_(std::move(engine)), data_dir_(std::move(data_dir)) {
  if (!data_dir_) return;
  const auto dir = *data_dir_ / "sessions";
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> logs;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".jsonl") logs.push_back(entry.path());
  }
  std::sort(logs.begin(), logs.end());
  for (const auto& path : logs) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    Session s = Session::replay(engine_, buf.str());
    const std::string id = s.id();
    if (id.size() > 2 && id.rfind("s-", 0) == 0) {
      try {
        next_id_ = std::max<uint64_t>(next_id_, std::stoull(id.substr(2)) + 1);
      } catch (const std::exception&) {
      }
    }
    sessions_.emplace(id, std::make_shared<Slot>(std::move(s)));
  }
}

std::filesystem::path SessionStore::log_path(const std::string& id) const {
  return *data_dir_ / "sessions" / (id + ".jsonl");
}

void SessionStore::append_events(const Slot& slot, size_t from) const {
  if (!data_dir_) return;
  const auto& events = slot.session.events();
  if (from >= events.size()) return;
  std::ofstream out(log_path(slot.session.id()), std::ios::app | std::ios::binary);
  for (size_t i = from; i < events.size(); ++i) out << events[i] << '\n';
  out.flush();
  if (!out) throw Error("cannot write event log for session " + slot.session.id());
}

std::string SessionStore::open(const std::string& pattern_id, std::vector<Param> context,
                               uint64_t seed) {
  std::string id;
  {
    std::unique_lock lock(mu_);
    id = "s-" + std::to_string(next_id_++);
  }
  auto slot = std::make_shared<Slot>(Session::open(engine_, id, pattern_id, std::move(context), seed));
  append_events(*slot, 0);
  std::unique_lock lock(mu_);
  sessions_.emplace(id, std::move(slot));
  return id;
}

std::shared_ptr<SessionStore::Slot> SessionStore::find(const std::string& id) const {
  std::shared_lock lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw UnknownSession(id);
  return it->second;
}

std::vector<std::string> SessionStore::ids() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> out;
  for (const auto& [id, slot] : sessions_) out.push_back(id);
  return out;
}

}  // namespace patternforge
