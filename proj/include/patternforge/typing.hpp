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


#ifndef PATTERNFORGE_TYPING_HPP_
#define PATTERNFORGE_TYPING_HPP_

#include <string>
#include <vector>

#include "patternforge/api_graph.hpp"
#include "patternforge/scs.hpp"

namespace patternforge {

// Resolves every call, field and enum reference against the graph and
// annotates nodes with their produced type and member reference. Free
// variables take the type implied by their first constraining use; a later
// incompatible use turns them "unknown" and lists them in conflicting_vars.
ScsExample annotate_example(const ScsExample& example, const ApiGraph& graph);

std::vector<ScsExample> annotate_corpus(const std::vector<ScsExample>& corpus,
                                        const ApiGraph& graph);

// Annotates a standalone expression; `scope` supplies variable types.
ExprPtr annotate_expression(const ExprPtr& expr, const std::vector<Param>& scope,
                            const ApiGraph& graph);

// True iff every resolved member receives arguments of acceptable types and
// the root produces a type assignable to `target` (skipped when empty).
// Placeholders type-check as their declared type.
bool type_checks(const Expr& expr, const ApiGraph& graph, const std::string& target = {});

}  // namespace patternforge

#endif  // PATTERNFORGE_TYPING_HPP_
