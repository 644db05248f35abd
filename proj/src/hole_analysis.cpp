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


#include "patternforge/hole_analysis.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"
#include "patternforge/errors.hpp"
#include "patternforge/expr.hpp"
#include "patternforge/linearize.hpp"

namespace patternforge {

using json = nlohmann::json;

namespace {

struct DefSite {
  int pos;
  ExprPtr value;  // null for declarations without initializer and catch variables
};

struct FlowIndex {
  std::map<const Expr*, int> site_pos;
  std::map<std::string, std::vector<DefSite>> defs;
};

void index_statements(const std::vector<Statement>& stmts, int& counter, FlowIndex& fx) {
  for (const auto& s : stmts) {
    int pos = counter++;
    if (s.expr) visit(s.expr, [&](const ExprPtr& e) { fx.site_pos[e.get()] = pos; });
    if (s.kind == StmtKind::kDeclaration || s.kind == StmtKind::kAssignment) {
      fx.defs[s.name].push_back({pos, s.expr});
    }
    index_statements(s.body, counter, fx);
    for (const auto& c : s.catches) {
      int cpos = counter++;
      if (!c.var.empty()) fx.defs[c.var].push_back({cpos, nullptr});
      index_statements(c.body, counter, fx);
    }
  }
}

// Last definition strictly before `pos`.
const DefSite* reaching(const FlowIndex& fx, const std::string& name, int pos) {
  auto it = fx.defs.find(name);
  if (it == fx.defs.end()) return nullptr;
  const DefSite* best = nullptr;
  for (const auto& d : it->second) {
    if (d.pos < pos) best = &d;
  }
  return best;
}

ExprPtr inline_expr(const ExprPtr& e, int pos, const FlowIndex& fx) {
  if (!e) return e;
  if (e->kind == ExprKind::kVariable) {
    const DefSite* d = reaching(fx, e->name, pos);
    if (d && d->value) return inline_expr(d->value, d->pos, fx);
    return e;
  }
  if (!e->base && e->args.empty()) return e;
  ExprPtr base = inline_expr(e->base, pos, fx);
  std::vector<ExprPtr> args;
  args.reserve(e->args.size());
  bool changed = base != e->base;
  for (const auto& a : e->args) {
    args.push_back(inline_expr(a, pos, fx));
    changed = changed || args.back() != a;
  }
  return changed ? e->with_children(base, std::move(args)) : e;
}

bool is_frozen_kind(const Expr& e) {
  return e.kind == ExprKind::kLiteral || e.kind == ExprKind::kEnumAccess;
}

std::string group_type(const std::vector<std::string>& types, const ApiGraph& graph) {
  for (const auto& t : types) {
    bool ok = true;
    for (const auto& u : types) {
      if (!graph.has_type(t) || !graph.has_type(u) || !graph.is_assignable(t, u)) {
        ok = false;
        break;
      }
    }
    if (ok) return t;
  }
  return types.empty() ? std::string() : types.front();
}

}  // namespace

std::string_view syntax_type_name(SyntaxType t) {
  switch (t) {
    case SyntaxType::kEnumeration: return "Enumeration";
    case SyntaxType::kMethodCall: return "MethodCall";
    case SyntaxType::kConstant: return "Constant";
    case SyntaxType::kClassInstantiation: return "ClassInstantiation";
    case SyntaxType::kDefinedVariable: return "DefinedVariable";
  }
  return "MethodCall";
}

std::optional<SyntaxType> syntax_type_from_name(std::string_view name) {
  for (int i = 0; i < kSyntaxTypeCount; ++i) {
    if (syntax_type_name(static_cast<SyntaxType>(i)) == name) return static_cast<SyntaxType>(i);
  }
  return std::nullopt;
}

SyntaxType classify(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kEnumAccess: return SyntaxType::kEnumeration;
    case ExprKind::kLiteral:
    case ExprKind::kNull: return SyntaxType::kConstant;
    case ExprKind::kConstructor: return SyntaxType::kClassInstantiation;
    case ExprKind::kVariable: return SyntaxType::kDefinedVariable;
    case ExprKind::kPlaceholder:
      return is_constant_slot(e) ? SyntaxType::kConstant : SyntaxType::kMethodCall;
    case ExprKind::kMethodCall:
    case ExprKind::kFieldAccess: return SyntaxType::kMethodCall;
  }
  return SyntaxType::kMethodCall;
}

void ClusterConfig::validate() const {
  auto in_range = [](double v) { return v > 0.0 && v <= 1.0; };
  if (!in_range(fixed_threshold) || !in_range(coref_threshold)) {
    throw PreconditionError("cluster thresholds must lie in (0, 1]");
  }
}

std::optional<Embedding> embed(const ScsPattern& pattern, const ScsExample& example) {
  auto tokens = linearize(example);
  Embedding emb;
  size_t at = 0;
  for (const auto& want : pattern.tokens) {
    while (at < tokens.size() && tokens[at].text != want) ++at;
    if (at == tokens.size()) return std::nullopt;
    emb.token_positions.push_back(static_cast<int>(at));
    if (tokens[at].kind == TokenKind::kCall) emb.call_sites.push_back(tokens[at].site);
    ++at;
  }
  return emb;
}

std::vector<HoleResolution> resolve_holes(const ScsExample& example, const ScsPattern& pattern,
                                          const ApiGraph& graph) {
  auto emb = embed(pattern, example);
  if (!emb) throw NoMatch("pattern " + pattern.id + " does not embed in example " + example.id);
  FlowIndex fx;
  int counter = 0;
  index_statements(example.statements, counter, fx);

  std::vector<HoleResolution> out;
  out.reserve(pattern.holes.size());
  for (const auto& hole : pattern.holes) {
    HoleResolution r;
    r.hole_id = hole.id;
    r.example_id = example.id;
    const size_t ci = static_cast<size_t>(hole.call_index);
    if (ci >= emb->call_sites.size()) {
      out.push_back(std::move(r));
      continue;
    }
    const ExprPtr& site = emb->call_sites[ci];
    ExprPtr raw;
    if (hole.role == HoleRole::kReceiver) {
      raw = site->base;
    } else if (hole.param_index >= 0 && static_cast<size_t>(hole.param_index) < site->args.size()) {
      raw = site->args[static_cast<size_t>(hole.param_index)];
    }
    if (!raw) {
      out.push_back(std::move(r));
      continue;
    }
    auto pos_it = fx.site_pos.find(site.get());
    const int pos = pos_it == fx.site_pos.end() ? counter : pos_it->second;

    // Follow plain variable hops to see whether the actual is an earlier
    // pattern call's result.
    ExprPtr root = raw;
    int root_pos = pos;
    while (root->kind == ExprKind::kVariable) {
      const DefSite* d = reaching(fx, root->name, root_pos);
      if (!d || !d->value) break;
      root = d->value;
      root_pos = d->pos;
    }
    for (size_t j = 0; j < ci; ++j) {
      if (emb->call_sites[j].get() == root.get()) {
        r.bound_call = static_cast<int>(j);
        break;
      }
    }

    r.expression = inline_expr(raw, pos, fx);
    r.syntax_type = classify(*r.expression);
    const std::string& t = r.expression->type;
    r.flagged = t.empty() || t == "unknown" || !graph.accepts(hole.declared_type, t);
    out.push_back(std::move(r));
  }
  return out;
}

ExprPtr resolve_hole(const ScsExample& example, const ScsPattern& pattern, const Hole& hole,
                     const ApiGraph& graph) {
  auto all = resolve_holes(example, pattern, graph);
  for (const auto& r : all) {
    if (r.hole_id == hole.id) return r.expression;
  }
  throw NoMatch("hole " + hole.id + " is not part of pattern " + pattern.id);
}

FreezeResult freeze_fixed(const ScsPattern& pattern,
                          const std::vector<std::vector<HoleResolution>>& resolutions,
                          const ClusterConfig& cfg) {
  cfg.validate();
  const size_t n_holes = pattern.holes.size();
  const size_t n_examples = resolutions.size();
  FreezeResult out;
  std::vector<bool> done(n_holes, false);

  // Holes that carry an earlier call's result.
  for (size_t h = 0; h < n_holes && n_examples > 0; ++h) {
    std::map<int, int> counts;
    for (const auto& ex : resolutions) {
      if (ex[h].bound_call >= 0) ++counts[ex[h].bound_call];
    }
    int best_call = -1;
    int best = 0;
    for (const auto& [call, c] : counts) {
      if (c > best) {
        best = c;
        best_call = call;
      }
    }
    double freq = static_cast<double>(best) / static_cast<double>(n_examples);
    if (best_call >= 0 && freq >= cfg.fixed_threshold) {
      out.bound.push_back({pattern.holes[h].id, best_call, freq});
      done[h] = true;
    }
  }

  std::vector<size_t> active(n_examples);
  for (size_t e = 0; e < n_examples; ++e) active[e] = e;
  for (;;) {
    int best_hole = -1;
    double best_freq = -1.0;
    ExprPtr best_value;
    for (size_t h = 0; h < n_holes; ++h) {
      if (done[h]) continue;
      std::map<std::string, std::pair<int, ExprPtr>> counts;
      int resolved = 0;
      for (size_t e : active) {
        const ExprPtr& x = resolutions[e][h].expression;
        if (!x) continue;
        ++resolved;
        auto& slot = counts[to_string(*x)];
        if (!slot.second) slot.second = x;
        ++slot.first;
      }
      if (resolved == 0) continue;
      int top = 0;
      ExprPtr value;
      for (const auto& [text, entry] : counts) {
        if (entry.first > top) {
          top = entry.first;
          value = entry.second;
        }
      }
      if (!is_frozen_kind(*value)) continue;
      double freq = static_cast<double>(top) / static_cast<double>(resolved);
      if (freq >= cfg.fixed_threshold && freq > best_freq) {
        best_freq = freq;
        best_hole = static_cast<int>(h);
        best_value = value;
      }
    }
    if (best_hole < 0) break;
    done[static_cast<size_t>(best_hole)] = true;
    out.fixed.push_back({pattern.holes[static_cast<size_t>(best_hole)].id, best_value, best_freq});
    const std::string text = to_string(*best_value);
    std::erase_if(active, [&](size_t e) {
      const ExprPtr& x = resolutions[e][static_cast<size_t>(best_hole)].expression;
      return !x || to_string(*x) != text;
    });
  }
  for (size_t h = 0; h < n_holes; ++h) {
    if (!done[h]) out.changeable.push_back(pattern.holes[h].id);
  }
  return out;
}

double coref_degree(const std::vector<std::vector<HoleResolution>>& resolutions, size_t a,
                    size_t b) {
  int both = 0;
  int same = 0;
  for (const auto& ex : resolutions) {
    const ExprPtr& x = ex[a].expression;
    const ExprPtr& y = ex[b].expression;
    if (!x || !y) continue;
    ++both;
    if (to_string(*x) == to_string(*y)) ++same;
  }
  return both == 0 ? 0.0 : static_cast<double>(same) / static_cast<double>(both);
}

CoRefMatrix cluster_matrix(const std::vector<std::vector<double>>& degree, double threshold) {
  CoRefMatrix m;
  const size_t n = degree.size();
  for (size_t i = 0; i < n; ++i) m.groups.push_back({static_cast<int>(i)});
  m.degree = degree;
  for (;;) {
    size_t side = m.groups.size();
    // First qualifying pair in row-major order.
    int bi = -1;
    int bj = -1;
    for (size_t i = 0; i < side && bi < 0; ++i) {
      for (size_t j = i + 1; j < side; ++j) {
        if (m.degree[i][j] >= threshold) {
          bi = static_cast<int>(i);
          bj = static_cast<int>(j);
          break;
        }
      }
    }
    if (bi < 0) break;
    const size_t a = static_cast<size_t>(bi);
    const size_t b = static_cast<size_t>(bj);
    for (size_t k = 0; k < side; ++k) {
      double v = std::min(m.degree[a][k], m.degree[b][k]);
      m.degree[a][k] = v;
      m.degree[k][a] = v;
    }
    m.groups[a].insert(m.groups[a].end(), m.groups[b].begin(), m.groups[b].end());
    std::sort(m.groups[a].begin(), m.groups[a].end());
    m.groups.erase(m.groups.begin() + static_cast<long>(b));
    m.degree.erase(m.degree.begin() + static_cast<long>(b));
    for (auto& row : m.degree) row.erase(row.begin() + static_cast<long>(b));
  }
  return m;
}

namespace {

size_t hole_index(const ScsPattern& pattern, const std::string& id) {
  for (size_t i = 0; i < pattern.holes.size(); ++i) {
    if (pattern.holes[i].id == id) return i;
  }
  throw UnknownGroup(id);
}

std::pair<std::vector<HoleGroup>, CoRefMatrix> cluster_impl(
    const ScsPattern& pattern, const std::vector<std::string>& changeable,
    const std::vector<std::vector<HoleResolution>>& resolutions, const ClusterConfig& cfg,
    const ApiGraph& graph) {
  cfg.validate();
  std::vector<size_t> idx;
  for (const auto& id : changeable) idx.push_back(hole_index(pattern, id));
  const size_t n = idx.size();
  std::vector<std::vector<double>> degree(n, std::vector<double>(n, 1.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      double d = coref_degree(resolutions, idx[i], idx[j]);
      degree[i][j] = d;
      degree[j][i] = d;
    }
  }
  CoRefMatrix m = cluster_matrix(degree, cfg.coref_threshold);
  std::vector<HoleGroup> groups;
  for (size_t g = 0; g < m.groups.size(); ++g) {
    HoleGroup hg;
    hg.id = "g" + std::to_string(g);
    std::vector<std::string> types;
    for (int member : m.groups[g]) {
      const Hole& h = pattern.holes[idx[static_cast<size_t>(member)]];
      hg.holes.push_back(h.id);
      types.push_back(h.declared_type);
    }
    hg.type = group_type(types, graph);
    groups.push_back(std::move(hg));
  }
  return {std::move(groups), std::move(m)};
}

}  // namespace

std::vector<HoleGroup> cluster_coref(const ScsPattern& pattern,
                                     const std::vector<std::string>& changeable,
                                     const std::vector<std::vector<HoleResolution>>& resolutions,
                                     const ClusterConfig& cfg, const ApiGraph& graph) {
  return cluster_impl(pattern, changeable, resolutions, cfg, graph).first;
}

PatternAnalysis analyze_pattern(const ScsPattern& pattern, const std::vector<ScsExample>& corpus,
                                const ApiGraph& graph, const ClusterConfig& cfg) {
  PatternAnalysis a;
  a.pattern_id = pattern.id;
  for (const auto& ex : corpus) {
    if (!embed(pattern, ex)) continue;
    a.example_ids.push_back(ex.id);
    a.resolutions.push_back(resolve_holes(ex, pattern, graph));
  }
  a.freeze = freeze_fixed(pattern, a.resolutions, cfg);
  auto [groups, matrix] = cluster_impl(pattern, a.freeze.changeable, a.resolutions, cfg, graph);
  a.groups = std::move(groups);
  a.matrix = std::move(matrix);
  return a;
}

ExprPtr group_expression(const PatternAnalysis& analysis, const ScsPattern& pattern,
                         size_t example_index, size_t group_index) {
  const auto& ex = analysis.resolutions.at(example_index);
  for (const auto& id : analysis.groups.at(group_index).holes) {
    const ExprPtr& x = ex[hole_index(pattern, id)].expression;
    if (x) return x;
  }
  return nullptr;
}

std::string analysis_to_json(const PatternAnalysis& analysis, const ScsPattern& pattern) {
  json out;
  out["pattern"] = analysis.pattern_id;
  out["examples"] = analysis.example_ids;
  json fixed = json::array();
  for (const auto& f : analysis.freeze.fixed) {
    fixed.push_back({{"hole", f.hole_id}, {"value", to_string(*f.value)}, {"frequency", f.frequency}});
  }
  out["fixed"] = fixed;
  json bound = json::array();
  for (const auto& b : analysis.freeze.bound) {
    bound.push_back({{"hole", b.hole_id}, {"call", b.call_index}, {"frequency", b.frequency}});
  }
  out["bound"] = bound;
  json groups = json::array();
  for (const auto& g : analysis.groups) {
    groups.push_back({{"id", g.id}, {"holes", g.holes}, {"type", g.type}, {"description", g.description}});
  }
  out["groups"] = groups;
  out["degree"] = analysis.matrix.degree;
  json freqs = json::object();
  for (size_t h = 0; h < pattern.holes.size(); ++h) {
    std::map<std::string, std::pair<int, SyntaxType>> counts;
    for (const auto& ex : analysis.resolutions) {
      const auto& r = ex[h];
      if (!r.expression) continue;
      auto& slot = counts[to_string(*r.expression)];
      ++slot.first;
      slot.second = r.syntax_type;
    }
    std::vector<std::pair<std::string, std::pair<int, SyntaxType>>> rows(counts.begin(), counts.end());
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& x, const auto& y) { return x.second.first > y.second.first; });
    json arr = json::array();
    for (const auto& [text, entry] : rows) {
      arr.push_back({{"expression", text}, {"count", entry.first},
                     {"syntax_type", syntax_type_name(entry.second)}});
    }
    freqs[pattern.holes[h].id] = arr;
  }
  out["frequencies"] = freqs;
  return out.dump(1) + "\n";
}

}  // namespace patternforge
