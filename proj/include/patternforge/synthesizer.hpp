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


#ifndef PATTERNFORGE_SYNTHESIZER_HPP_
#define PATTERNFORGE_SYNTHESIZER_HPP_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "patternforge/api_graph.hpp"
#include "patternforge/hole_analysis.hpp"
#include "patternforge/ranker.hpp"
#include "patternforge/scs.hpp"

namespace patternforge {

struct SynthConfig {
  int max_depth = 4;
  int per_type_cap = 50;  // 0 disables pruning

  void validate() const;
};

// Depth-bounded, memoized expression search over the graph. Locals, static
// fields and enum constants are leaves; non-static fields, constructors and
// methods combine sub-results one level shallower. Literal-typed targets
// always offer their typed constant slot, and an empty result at positive
// depth falls back to a single placeholder. With a cap, each creator
// contributes at most `per_type_cap` combinations and results below the
// requested depth keep only the `per_type_cap` most popular.
class Synthesizer {
 public:
  Synthesizer(const ApiGraph& graph, std::vector<Param> locals, SynthConfig cfg,
              const PopularityModel& model);

  // Ordered by popularity desc, then canonical text. Throws UnknownType.
  std::vector<ExprPtr> expressions(const std::string& type, int depth);
  std::vector<ExprPtr> expressions(const std::string& type) {
    return expressions(type, cfg_.max_depth);
  }

 private:
  struct Entry {
    ExprPtr expr;
    std::string text;
    int placeholders = 0;
    double popularity = 1.0;
  };
  using Entries = std::vector<Entry>;

  const Entries& search(const std::string& type, int depth);
  void combine(const Creator& c, const std::vector<const Entries*>& parts, bool has_receiver,
               Entries& out) const;
  Entry make_entry(const Creator& c, const std::vector<const Entry*>& picks, bool has_receiver) const;
  // False when the picked receiver and arguments would make the call or
  // field access resolve to a different member than `c`.
  bool dispatches(const Creator& c, const std::vector<const Entry*>& picks, bool has_receiver) const;

  const ApiGraph& graph_;
  std::vector<Param> locals_;
  SynthConfig cfg_;
  const PopularityModel& model_;
  std::map<std::pair<std::string, int>, Entries> memo_;
};

std::vector<ExprPtr> synthesize_expressions(const std::vector<Param>& locals,
                                            const std::string& target, const SynthConfig& cfg,
                                            const ApiGraph& graph,
                                            const PopularityModel* model = nullptr);

// Ranked candidates for a target type; `context_names` are the variables
// the user has bound (defaults to the locals).
std::vector<CandidateExpression> synthesize(const std::vector<Param>& locals,
                                            const std::string& target, const SynthConfig& cfg,
                                            const ApiGraph& graph,
                                            const PopularityModel* model = nullptr);

// Parameter documentation of the first documented parameter member, else
// the group's type name.
std::string describe_group(const HoleGroup& group, const ScsPattern& pattern,
                           const ApiGraph& graph);

}  // namespace patternforge

#endif  // PATTERNFORGE_SYNTHESIZER_HPP_
