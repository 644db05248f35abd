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


#include "patternforge/synthesizer.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "patternforge/errors.hpp"
#include "patternforge/expr.hpp"

namespace patternforge {

namespace {

template <typename E>
bool entry_less(const E& a, const E& b) {
  if (a.popularity != b.popularity) return a.popularity > b.popularity;
  return a.text < b.text;
}

}  // namespace

void SynthConfig::validate() const {
  if (max_depth < 1) throw PreconditionError("max_depth must be at least 1");
  if (per_type_cap < 0) throw PreconditionError("per_type_cap must not be negative");
}

Synthesizer::Synthesizer(const ApiGraph& graph, std::vector<Param> locals, SynthConfig cfg,
                         const PopularityModel& model)
    : graph_(graph), locals_(std::move(locals)), cfg_(cfg), model_(model) {
  cfg_.validate();
}

std::vector<ExprPtr> Synthesizer::expressions(const std::string& type, int depth) {
  if (!graph_.has_type(type)) throw UnknownType(type);
  std::vector<ExprPtr> out;
  for (const auto& e : search(type, depth)) out.push_back(e.expr);
  return out;
}

Synthesizer::Entry Synthesizer::make_entry(const Creator& c, const std::vector<const Entry*>& picks,
                                           bool has_receiver) const {
  Entry e;
  e.popularity = model_.probability(c.produced_type, c.ref);
  for (const Entry* p : picks) {
    e.placeholders += p->placeholders;
    e.popularity *= p->popularity;
  }
  const Node& n = graph_.node(c.node);
  ExprPtr base = has_receiver ? picks.front()->expr : nullptr;
  std::vector<ExprPtr> args;
  for (size_t i = has_receiver ? 1 : 0; i < picks.size(); ++i) args.push_back(picks[i]->expr);
  switch (c.kind) {
    case CreatorKind::kConstructor:
      e.expr = Expr::constructor(n.owner, std::move(args))->annotated(n.owner, n.ref);
      break;
    case CreatorKind::kMethod:
      e.expr = (n.is_static ? Expr::static_call(n.owner, n.name, std::move(args))
                            : Expr::method_call(base, n.name, std::move(args)))
                   ->annotated(n.return_type, n.ref);
      break;
    case CreatorKind::kField:
      e.expr = (n.is_static ? Expr::static_field(n.owner, n.name) : Expr::field_access(base, n.name))
                   ->annotated(n.field_type, n.ref);
      break;
    case CreatorKind::kEnumConstant:
      e.expr = Expr::enum_access(n.owner, n.name)->annotated(n.owner, n.ref);
      break;
  }
  e.text = to_string(*e.expr);
  return e;
}

bool Synthesizer::dispatches(const Creator& c, const std::vector<const Entry*>& picks,
                             bool has_receiver) const {
  const Node& n = graph_.node(c.node);
  if (c.kind == CreatorKind::kField) {
    return !has_receiver || graph_.find_field(picks.front()->expr->type, n.name) == &n;
  }
  if (c.kind == CreatorKind::kEnumConstant) return true;
  std::vector<std::string> arg_types;
  for (size_t i = has_receiver ? 1 : 0; i < picks.size(); ++i) arg_types.push_back(picks[i]->expr->type);
  const std::string owner = has_receiver ? picks.front()->expr->type : n.owner;
  const bool ctor = c.kind == CreatorKind::kConstructor;
  return graph_.resolve_call(owner, ctor ? "<init>" : n.name, arg_types) == &n;
}

void Synthesizer::combine(const Creator& c, const std::vector<const Entries*>& parts,
                          bool has_receiver, Entries& out) const {
  for (const Entries* p : parts) {
    if (p->empty()) return;
  }
  const size_t k = parts.size();
  std::vector<const Entry*> picks(k);
  if (cfg_.per_type_cap == 0) {
    std::vector<size_t> idx(k, 0);
    for (;;) {
      for (size_t i = 0; i < k; ++i) picks[i] = &(*parts[i])[idx[i]];
      if (dispatches(c, picks, has_receiver)) out.push_back(make_entry(c, picks, has_receiver));
      size_t i = k;
      while (i > 0) {
        --i;
        if (++idx[i] < parts[i]->size()) break;
        idx[i] = 0;
        if (i == 0) return;
      }
      if (k == 0) return;
    }
  }
  // Best-first walk over index tuples. Every part is sorted by popularity,
  // so moving one index forward never raises the product and states pop in
  // popularity order.
  struct State {
    double popularity;
    std::vector<size_t> idx;
  };
  auto worse = [](const State& a, const State& b) {
    if (a.popularity != b.popularity) return a.popularity < b.popularity;
    return a.idx > b.idx;
  };
  auto state_of = [&](std::vector<size_t> idx) {
    State s{1.0, std::move(idx)};
    for (size_t i = 0; i < k; ++i) s.popularity *= (*parts[i])[s.idx[i]].popularity;
    return s;
  };
  std::priority_queue<State, std::vector<State>, decltype(worse)> heap(worse);
  std::set<std::vector<size_t>> seen;
  heap.push(state_of(std::vector<size_t>(k, 0)));
  seen.insert(std::vector<size_t>(k, 0));
  int taken = 0;
  while (!heap.empty() && taken < cfg_.per_type_cap) {
    State s = heap.top();
    heap.pop();
    for (size_t i = 0; i < k; ++i) picks[i] = &(*parts[i])[s.idx[i]];
    if (dispatches(c, picks, has_receiver)) {
      out.push_back(make_entry(c, picks, has_receiver));
      ++taken;
    }
    for (size_t i = 0; i < k; ++i) {
      if (s.idx[i] + 1 >= parts[i]->size()) continue;
      std::vector<size_t> next = s.idx;
      ++next[i];
      if (seen.insert(next).second) heap.push(state_of(std::move(next)));
    }
  }
}

const Synthesizer::Entries& Synthesizer::search(const std::string& type, int depth) {
  auto key = std::make_pair(type, depth);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  Entries found;
  if (depth > 0) {
    for (const auto& local : locals_) {
      if (graph_.has_type(local.type) && graph_.is_assignable(local.type, type)) {
        Entry e;
        e.expr = Expr::variable(local.name, local.type);
        e.text = local.name;
        found.push_back(std::move(e));
      }
    }
    for (const auto& c : graph_.creators_of(type)) {
      const Node& n = graph_.node(c.node);
      std::vector<const Entries*> parts;
      bool has_receiver = false;
      if (c.kind == CreatorKind::kEnumConstant ||
          (c.kind == CreatorKind::kField && n.is_static)) {
        found.push_back(make_entry(c, {}, false));
        continue;
      }
      // References into memo_ stay valid: std::map never moves its nodes.
      if (!n.is_static && c.kind != CreatorKind::kConstructor) {
        parts.push_back(&search(n.owner, depth - 1));
        has_receiver = true;
      }
      for (const auto& p : n.params) parts.push_back(&search(p.type, depth - 1));
      combine(c, parts, has_receiver, found);
    }
    if (is_literal_type_name(type)) {
      Entry slot;
      slot.expr = Expr::placeholder(type);
      slot.text = to_string(*slot.expr);
      slot.placeholders = 1;
      slot.popularity = 1.0;
      found.push_back(std::move(slot));
    }
    std::sort(found.begin(), found.end(), entry_less<Entry>);
    found.erase(std::unique(found.begin(), found.end(),
                            [](const Entry& a, const Entry& b) { return a.text == b.text; }),
                found.end());
    // Sub-results are pruned; the requested level keeps every combination
    // the per-creator walk produced.
    if (cfg_.per_type_cap > 0 && depth < cfg_.max_depth &&
        found.size() > static_cast<size_t>(cfg_.per_type_cap)) {
      found.resize(static_cast<size_t>(cfg_.per_type_cap));
    }
    if (found.empty()) {
      Entry ph;
      ph.expr = Expr::placeholder(type);
      ph.text = to_string(*ph.expr);
      ph.placeholders = 1;
      ph.popularity = PopularityModel::kPlaceholderEpsilon;
      found.push_back(std::move(ph));
    }
  }
  return memo_.emplace(key, std::move(found)).first->second;
}

std::vector<ExprPtr> synthesize_expressions(const std::vector<Param>& locals,
                                            const std::string& target, const SynthConfig& cfg,
                                            const ApiGraph& graph, const PopularityModel* model) {
  if (!graph.has_type(target)) throw UnknownType(target);
  PopularityModel uniform;
  if (!model) {
    uniform = PopularityModel::uniform(graph);
    model = &uniform;
  }
  Synthesizer s(graph, locals, cfg, *model);
  return s.expressions(target);
}

std::vector<CandidateExpression> synthesize(const std::vector<Param>& locals,
                                            const std::string& target, const SynthConfig& cfg,
                                            const ApiGraph& graph, const PopularityModel* model) {
  if (!graph.has_type(target)) throw UnknownType(target);
  PopularityModel uniform;
  if (!model) {
    uniform = PopularityModel::uniform(graph);
    model = &uniform;
  }
  std::set<std::string> names;
  for (const auto& l : locals) names.insert(l.name);
  std::vector<CandidateExpression> out;
  for (const auto& e : synthesize_expressions(locals, target, cfg, graph, model)) {
    out.push_back(make_candidate(e, *model, names));
  }
  return rank_candidates(std::move(out));
}

std::string describe_group(const HoleGroup& group, const ScsPattern& pattern,
                           const ApiGraph& graph) {
  for (const auto& id : group.holes) {
    const Hole* h = pattern.find_hole(id);
    if (!h || h->role != HoleRole::kParam) continue;
    if (h->call_index < 0 || static_cast<size_t>(h->call_index) >= pattern.calls.size()) continue;
    const Node* m = graph.member(pattern.calls[static_cast<size_t>(h->call_index)].method_ref);
    if (!m || h->param_index < 0 || static_cast<size_t>(h->param_index) >= m->params.size()) continue;
    const std::string& doc = m->params[static_cast<size_t>(h->param_index)].doc;
    if (!doc.empty()) return doc;
  }
  return group.type;
}

}  // namespace patternforge
