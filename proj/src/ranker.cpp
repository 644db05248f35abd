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


#include "patternforge/ranker.hpp"

#include <algorithm>
#include <random>

#include "json.hpp"
#include "patternforge/errors.hpp"
#include "patternforge/expr.hpp"

namespace patternforge {

using json = nlohmann::json;

namespace {

bool is_creator_node(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kConstructor:
    case ExprKind::kFieldAccess:
    case ExprKind::kEnumAccess:
    case ExprKind::kMethodCall:
      return true;
    default:
      return false;
  }
}

void count_statements(const std::vector<Statement>& stmts, const ApiGraph& graph,
                      std::map<std::string, std::map<std::string, int>>& counts) {
  for (const auto& s : stmts) {
    visit(s.expr, [&](const ExprPtr& e) {
      if (!is_creator_node(*e) || e->member_ref.empty()) return;
      const Node* n = graph.member(e->member_ref);
      if (!n) return;
      std::string produced = n->produced_type();
      if (!produced.empty()) ++counts[produced][e->member_ref];
    });
    count_statements(s.body, graph, counts);
    for (const auto& c : s.catches) count_statements(c.body, graph, counts);
  }
}

// Uniform integer in [0, bound] by rejection, independent of the standard
// library's distribution implementation.
uint64_t bounded(std::mt19937_64& rng, uint64_t bound) {
  const uint64_t range = bound + 1;
  if (range == 0) return rng();
  const uint64_t limit = UINT64_MAX - (UINT64_MAX % range);
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % range;
}

}  // namespace

PopularityModel PopularityModel::fit(const std::vector<ScsExample>& corpus, const ApiGraph& graph) {
  PopularityModel m;
  m.corpus_size_ = corpus.size();
  for (const auto& ex : corpus) count_statements(ex.statements, graph, m.counts_);
  for (const auto& type : graph.type_names()) {
    auto creators = graph.exact_creators_of(type);
    if (creators.empty()) continue;
    int total = 0;
    for (const auto& c : creators) total += m.count(type, c.ref);
    auto& dist = m.probs_[type];
    const double denom = static_cast<double>(total) + static_cast<double>(creators.size());
    for (const auto& c : creators) {
      dist[c.ref] = (static_cast<double>(m.count(type, c.ref)) + 1.0) / denom;
    }
  }
  return m;
}

int PopularityModel::count(const std::string& type, const std::string& creator_ref) const {
  auto t = counts_.find(type);
  if (t == counts_.end()) return 0;
  auto c = t->second.find(creator_ref);
  return c == t->second.end() ? 0 : c->second;
}

double PopularityModel::probability(const std::string& type, const std::string& creator_ref) const {
  auto t = probs_.find(type);
  if (t == probs_.end()) return kUnknownCreator;
  auto p = t->second.find(creator_ref);
  return p == t->second.end() ? kUnknownCreator : p->second;
}

const std::map<std::string, double>* PopularityModel::distribution(const std::string& type) const {
  auto t = probs_.find(type);
  return t == probs_.end() ? nullptr : &t->second;
}

std::string PopularityModel::to_json() const {
  json out = {{"format", "patternforge-popularity"},
              {"corpus_size", corpus_size_},
              {"counts", counts_},
              {"probabilities", probs_}};
  return out.dump(1) + "\n";
}

PopularityModel PopularityModel::from_json(std::string_view text) {
  PopularityModel m;
  try {
    json doc = json::parse(text);
    if (doc.value("format", "") != "patternforge-popularity") {
      throw PreconditionError("not a popularity model");
    }
    m.corpus_size_ = doc.value("corpus_size", size_t{0});
    m.counts_ = doc.at("counts").get<decltype(m.counts_)>();
    m.probs_ = doc.at("probabilities").get<decltype(m.probs_)>();
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("malformed popularity model: ") + e.what());
  }
  return m;
}

double score_expression(const Expr& expr, const PopularityModel& model) {
  double score = 1.0;
  if (expr.kind == ExprKind::kPlaceholder) {
    // A typed constant slot stands for a literal the user types in.
    score = is_constant_slot(expr) ? 1.0 : PopularityModel::kPlaceholderEpsilon;
  } else if (is_creator_node(expr)) {
    score = expr.member_ref.empty() ? PopularityModel::kUnknownCreator
                                    : model.probability(expr.type, expr.member_ref);
  }
  if (expr.base) score *= score_expression(*expr.base, model);
  for (const auto& a : expr.args) score *= score_expression(*a, model);
  return score;
}

CandidateExpression make_candidate(const ExprPtr& expr, const PopularityModel& model,
                                   const std::set<std::string>& context_names) {
  CandidateExpression c;
  c.expression = expr;
  c.text = to_string(*expr);
  c.placeholder_count = count_placeholders(*expr);
  for (const auto& v : variable_names(*expr)) {
    if (!context_names.count(v)) ++c.free_var_count;
  }
  c.popularity = score_expression(*expr, model);
  c.syntax_type = classify(*expr);
  return c;
}

bool candidate_less(const CandidateExpression& a, const CandidateExpression& b) {
  if (a.incompleteness() != b.incompleteness()) return a.incompleteness() < b.incompleteness();
  if (a.popularity != b.popularity) return a.popularity > b.popularity;
  return a.text < b.text;
}

std::vector<CandidateExpression> rank_candidates(std::vector<CandidateExpression> cands) {
  std::sort(cands.begin(), cands.end(), candidate_less);
  return cands;
}

int ExampleRanking::rank_of(const std::string& example_id) const {
  for (size_t i = 0; i < order.size(); ++i) {
    if (order[i].example_id == example_id) return static_cast<int>(i) + 1;
  }
  return 0;
}

std::string root_key(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kMethodCall:
      return "m:" + (e.member_ref.empty() ? e.name : e.member_ref);
    case ExprKind::kConstructor:
      return "new:" + (e.member_ref.empty() ? e.owner : e.member_ref);
    case ExprKind::kFieldAccess:
      return "f:" + (e.member_ref.empty() ? e.name : e.member_ref);
    case ExprKind::kEnumAccess:
      return "e:" + e.owner + "." + e.name;
    case ExprKind::kVariable:
      return "v:" + e.name;
    case ExprKind::kLiteral:
      return "c:" + std::string(literal_type_name(e.literal_type));
    case ExprKind::kNull:
      return "c:null";
    case ExprKind::kPlaceholder:
      return (is_constant_slot(e) ? "c:" : "p:") + e.owner;
  }
  return {};
}

double match_score(const ExprPtr& example_expr, const ExprPtr& assigned, const RerankConfig& cfg) {
  if (!example_expr || !assigned) return 0.0;
  if (to_string(*example_expr) == to_string(*assigned)) return cfg.exact_credit;
  if (root_key(*example_expr) == root_key(*assigned)) return cfg.root_credit;
  return 0.0;
}

std::vector<std::string> seeded_shuffle(std::vector<std::string> ids, uint64_t seed) {
  std::sort(ids.begin(), ids.end());
  std::mt19937_64 rng(seed);
  for (size_t i = ids.size(); i > 1; --i) {
    size_t j = static_cast<size_t>(bounded(rng, i - 1));
    std::swap(ids[i - 1], ids[j]);
  }
  return ids;
}

ExampleRanking rerank_examples(const std::vector<std::string>& example_ids,
                               const std::vector<std::vector<ExprPtr>>& group_exprs,
                               const std::vector<double>& priors,
                               const std::map<size_t, ExprPtr>& assignments, uint64_t seed,
                               const RerankConfig& cfg) {
  ExampleRanking ranking;
  ranking.seed = seed;
  const size_t n = example_ids.size();
  auto prior_of = [&](size_t e) { return e < priors.size() ? priors[e] : 0.0; };
  if (assignments.empty()) {
    std::map<std::string, size_t> index;
    for (size_t e = 0; e < n; ++e) index.emplace(example_ids[e], e);
    for (const auto& id : seeded_shuffle(example_ids, seed)) {
      ranking.order.push_back({id, 0.0, prior_of(index[id])});
    }
    return ranking;
  }
  for (size_t e = 0; e < n; ++e) {
    double score = 0.0;
    for (const auto& [g, chosen] : assignments) {
      if (e < group_exprs.size() && g < group_exprs[e].size()) {
        score += match_score(group_exprs[e][g], chosen, cfg);
      }
    }
    ranking.order.push_back({example_ids[e], score, prior_of(e)});
  }
  std::sort(ranking.order.begin(), ranking.order.end(),
            [](const RankedExample& a, const RankedExample& b) {
              if (a.score != b.score) return a.score > b.score;
              if (a.prior != b.prior) return a.prior > b.prior;
              return a.example_id < b.example_id;
            });
  return ranking;
}

double mrr(const std::vector<std::optional<int>>& ranks) {
  if (ranks.empty()) throw PreconditionError("MRR over an empty hole set is undefined");
  double sum = 0.0;
  for (const auto& r : ranks) {
    if (!r) continue;
    if (*r < 1) throw PreconditionError("ranks start at 1");
    sum += 1.0 / static_cast<double>(*r);
  }
  return sum / static_cast<double>(ranks.size());
}

}  // namespace patternforge
