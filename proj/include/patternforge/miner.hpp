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


#ifndef PATTERNFORGE_MINER_HPP_
#define PATTERNFORGE_MINER_HPP_

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "patternforge/api_graph.hpp"
#include "patternforge/scs.hpp"

namespace patternforge {

struct MinerConfig {
  double min_support_fraction = 0.05;
  // Minimum number of call tokens; control tokens do not count.
  int min_length = 3;
  bool closed_only = true;

  void validate() const;
};

struct MinedSequence {
  std::vector<std::string> tokens;
  int support = 0;

  friend bool operator==(const MinedSequence&, const MinedSequence&) = default;
};

// Smallest example count that meets the fraction, i.e. ceil(fraction * n).
int support_threshold(double fraction, size_t corpus_size);

// Frequent subsequences by document frequency, closed when requested,
// sorted by support desc, length desc, then tokens.
std::vector<MinedSequence> mine_sequences(const std::vector<std::vector<std::string>>& db,
                                          const MinerConfig& cfg);

// Mines a typed corpus (see annotate_corpus) and packages each sequence as
// a pattern. Throws PreconditionError on an empty corpus.
std::vector<ScsPattern> mine(const std::vector<ScsExample>& corpus, const MinerConfig& cfg,
                             const ApiGraph& graph);

// Content-derived identifier, stable across runs.
std::string pattern_id(const std::vector<std::string>& tokens);

// Builds call templates and holes for a token sequence. Throws
// UnknownMethodToken for call tokens without a Method node.
ScsPattern make_pattern(const std::vector<std::string>& tokens, int support,
                        const ApiGraph& graph);

// Assigns hole-0, hole-1, ... in call order, receiver before params, and
// links them into the templates.
std::vector<Hole> extract_holes(std::vector<CallTemplate>& calls, const ApiGraph& graph);

std::string patterns_to_json(const std::vector<ScsPattern>& patterns);
// Accepts full entries or the tokens-only shorthand, which is expanded
// through make_pattern.
std::vector<ScsPattern> patterns_from_json(std::string_view text, const ApiGraph& graph);
std::vector<ScsPattern> load_patterns(const std::filesystem::path& path, const ApiGraph& graph);

// Review file for manual vetting: one entry per pattern with its rendering
// and a "pending" decision.
std::string review_json(const std::vector<ScsPattern>& patterns);
// Ids marked "reject" in a review file.
std::set<std::string> rejected_ids(std::string_view review_text);
// One id per line; blank lines and lines starting with '#' are ignored.
std::set<std::string> load_denylist(const std::filesystem::path& path);
std::vector<ScsPattern> apply_denylist(std::vector<ScsPattern> patterns,
                                       const std::set<std::string>& denied);

}  // namespace patternforge

#endif  // PATTERNFORGE_MINER_HPP_
