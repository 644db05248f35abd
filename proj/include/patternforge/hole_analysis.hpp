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


#ifndef PATTERNFORGE_HOLE_ANALYSIS_HPP_
#define PATTERNFORGE_HOLE_ANALYSIS_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "patternforge/api_graph.hpp"
#include "patternforge/scs.hpp"

namespace patternforge {

enum class SyntaxType { kEnumeration, kMethodCall, kConstant, kClassInstantiation, kDefinedVariable };

constexpr int kSyntaxTypeCount = 5;

std::string_view syntax_type_name(SyntaxType t);
std::optional<SyntaxType> syntax_type_from_name(std::string_view name);

// Root-based completion syntax of an expression. Placeholders count as
// constants when they stand for a literal type and as method calls otherwise.
SyntaxType classify(const Expr& expr);

struct ClusterConfig {
  double fixed_threshold = 0.5;
  double coref_threshold = 0.8;

  void validate() const;
};

// Positions of the pattern tokens inside an example's linearization
// (greedy leftmost match) and the expression node of every matched call.
struct Embedding {
  std::vector<int> token_positions;
  std::vector<ExprPtr> call_sites;
};

// Expects a typed example.
std::optional<Embedding> embed(const ScsPattern& pattern, const ScsExample& example);

struct HoleResolution {
  std::string hole_id;
  std::string example_id;
  ExprPtr expression;  // null when the call site lacks this position
  SyntaxType syntax_type = SyntaxType::kDefinedVariable;
  // Pattern call whose result the actual is (directly or through locals).
  int bound_call = -1;
  // Produced type not assignable to the hole type.
  bool flagged = false;
};

// Resolutions for every hole of the pattern, in hole order. Throws NoMatch.
std::vector<HoleResolution> resolve_holes(const ScsExample& example, const ScsPattern& pattern,
                                          const ApiGraph& graph);
ExprPtr resolve_hole(const ScsExample& example, const ScsPattern& pattern, const Hole& hole,
                     const ApiGraph& graph);

struct FixedHole {
  std::string hole_id;
  ExprPtr value;
  double frequency = 0.0;
};

struct BoundHole {
  std::string hole_id;
  int call_index = -1;
  double frequency = 0.0;
};

struct FreezeResult {
  std::vector<FixedHole> fixed;
  std::vector<BoundHole> bound;
  std::vector<std::string> changeable;  // hole order
};

// `resolutions[e]` holds the resolutions of example e in hole order.
FreezeResult freeze_fixed(const ScsPattern& pattern,
                          const std::vector<std::vector<HoleResolution>>& resolutions,
                          const ClusterConfig& cfg);

// Degree between two holes: share of examples where both resolve and the
// canonical prints agree, over the examples where both resolve.
double coref_degree(const std::vector<std::vector<HoleResolution>>& resolutions, size_t a,
                    size_t b);

struct CoRefMatrix {
  std::vector<std::vector<int>> groups;  // indices into the input degree matrix
  std::vector<std::vector<double>> degree;
};

// Bottom-up merging over a symmetric degree matrix. Each step merges the
// pair with the highest degree at or above the threshold (row-major on ties)
// and keeps the element-wise minimum as the merged row.
CoRefMatrix cluster_matrix(const std::vector<std::vector<double>>& degree, double threshold);

struct HoleGroup {
  std::string id;
  std::vector<std::string> holes;  // hole order
  std::string type;
  std::string description;
};

std::vector<HoleGroup> cluster_coref(const ScsPattern& pattern,
                                     const std::vector<std::string>& changeable,
                                     const std::vector<std::vector<HoleResolution>>& resolutions,
                                     const ClusterConfig& cfg, const ApiGraph& graph);

struct PatternAnalysis {
  std::string pattern_id;
  std::vector<std::string> example_ids;  // embedded examples, corpus order
  std::vector<std::vector<HoleResolution>> resolutions;
  FreezeResult freeze;
  std::vector<HoleGroup> groups;
  CoRefMatrix matrix;  // over groups
};

// Expects a typed corpus. Examples the pattern does not embed in are skipped.
PatternAnalysis analyze_pattern(const ScsPattern& pattern, const std::vector<ScsExample>& corpus,
                                const ApiGraph& graph, const ClusterConfig& cfg);

// Expression of a group in one example: the first member hole that resolves.
ExprPtr group_expression(const PatternAnalysis& analysis, const ScsPattern& pattern,
                         size_t example_index, size_t group_index);

std::string analysis_to_json(const PatternAnalysis& analysis, const ScsPattern& pattern);

}  // namespace patternforge

#endif  // PATTERNFORGE_HOLE_ANALYSIS_HPP_
