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


#ifndef PATTERNFORGE_RANKER_HPP_
#define PATTERNFORGE_RANKER_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "patternforge/api_graph.hpp"
#include "patternforge/hole_analysis.hpp"
#include "patternforge/scs.hpp"

namespace patternforge {

// Per produced type, the probability of each exact creator of that type.
class PopularityModel {
 public:
  static constexpr double kPlaceholderEpsilon = 0.01;
  static constexpr double kUnknownCreator = 1e-6;

  // Counts every resolved creator node in a typed corpus and smooths with
  // add-one over the creators of its produced type. An empty corpus yields
  // the uniform model.
  static PopularityModel fit(const std::vector<ScsExample>& corpus, const ApiGraph& graph);
  static PopularityModel uniform(const ApiGraph& graph) { return fit({}, graph); }

  // Probability of `creator_ref` among the creators of `type`, or
  // kUnknownCreator when it is not one of them.
  double probability(const std::string& type, const std::string& creator_ref) const;
  const std::map<std::string, double>* distribution(const std::string& type) const;
  int count(const std::string& type, const std::string& creator_ref) const;
  size_t corpus_size() const { return corpus_size_; }

  std::string to_json() const;
  static PopularityModel from_json(std::string_view text);

 private:
  std::map<std::string, std::map<std::string, int>> counts_;
  std::map<std::string, std::map<std::string, double>> probs_;
  size_t corpus_size_ = 0;
};

// Product of creator probabilities. Variables, literals and typed constant
// slots score one; other placeholders score kPlaceholderEpsilon.
double score_expression(const Expr& expr, const PopularityModel& model);

struct CandidateExpression {
  ExprPtr expression;
  std::string text;
  int placeholder_count = 0;
  int free_var_count = 0;  // variables not bound in the context
  double popularity = 0.0;
  SyntaxType syntax_type = SyntaxType::kMethodCall;

  int incompleteness() const { return placeholder_count + free_var_count; }
};

CandidateExpression make_candidate(const ExprPtr& expr, const PopularityModel& model,
                                   const std::set<std::string>& context_names);

// Sorted by incompleteness asc, popularity desc, then canonical text.
std::vector<CandidateExpression> rank_candidates(std::vector<CandidateExpression> cands);
bool candidate_less(const CandidateExpression& a, const CandidateExpression& b);

struct RerankConfig {
  double exact_credit = 1.0;
  double root_credit = 0.5;
};

struct RankedExample {
  std::string example_id;
  double score = 0.0;
  double prior = 0.0;
};

struct ExampleRanking {
  std::vector<RankedExample> order;
  uint64_t seed = 0;

  // 1-based rank of an example, or 0 when absent.
  int rank_of(const std::string& example_id) const;
};

// Identity of the outermost creator, used for partial credit.
std::string root_key(const Expr& expr);

double match_score(const ExprPtr& example_expr, const ExprPtr& assigned, const RerankConfig& cfg);

// `group_exprs[e][g]` is example e's expression for group g (may be null);
// `priors[e]` breaks score ties; `assignments` maps group index to choice.
ExampleRanking rerank_examples(const std::vector<std::string>& example_ids,
                               const std::vector<std::vector<ExprPtr>>& group_exprs,
                               const std::vector<double>& priors,
                               const std::map<size_t, ExprPtr>& assignments, uint64_t seed,
                               const RerankConfig& cfg = {});

// Seeded uniform permutation of the id-sorted list.
std::vector<std::string> seeded_shuffle(std::vector<std::string> ids, uint64_t seed);

// Mean reciprocal rank; absent answers contribute zero. Throws
// PreconditionError on an empty list or a rank below one.
double mrr(const std::vector<std::optional<int>>& ranks);

}  // namespace patternforge

#endif  // PATTERNFORGE_RANKER_HPP_
