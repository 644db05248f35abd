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


#ifndef PATTERNFORGE_SESSION_HPP_
#define PATTERNFORGE_SESSION_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <type_traits>
#include <string_view>
#include <vector>

#include "patternforge/api_graph.hpp"
#include "patternforge/hole_analysis.hpp"
#include "patternforge/ranker.hpp"
#include "patternforge/scs.hpp"
#include "patternforge/synthesizer.hpp"

namespace patternforge {

struct EngineConfig {
  SynthConfig synth;
  ClusterConfig cluster;
  RerankConfig rerank;
};

// Everything sessions share: graph, typed corpus, patterns and popularity.
// Immutable after construction apart from the analysis cache, which is
// internally locked.
class Engine {
 public:
  // Types the corpus against the graph. Without a popularity model one is
  // fitted on the corpus.
  Engine(ApiGraph graph, std::vector<ScsExample> corpus, std::vector<ScsPattern> patterns,
         EngineConfig cfg = {}, std::optional<PopularityModel> popularity = std::nullopt);

  const ApiGraph& graph() const { return graph_; }
  const std::vector<ScsExample>& corpus() const { return corpus_; }
  const std::vector<ScsPattern>& patterns() const { return patterns_; }
  const PopularityModel& popularity() const { return popularity_; }
  const EngineConfig& config() const { return cfg_; }

  // Throws UnknownPattern.
  const ScsPattern& pattern(const std::string& id) const;
  const ScsExample* example(const std::string& id) const;
  // Hole analysis of a pattern over the corpus, computed once.
  std::shared_ptr<const PatternAnalysis> analysis(const std::string& pattern_id) const;

 private:
  ApiGraph graph_;
  std::vector<ScsExample> corpus_;
  std::vector<ScsPattern> patterns_;
  EngineConfig cfg_;
  PopularityModel popularity_;
  std::map<std::string, size_t> example_index_;
  mutable std::mutex cache_mu_;
  mutable std::map<std::string, std::shared_ptr<const PatternAnalysis>> cache_;
};

struct SessionCandidate {
  std::string id;  // "c<rank>", unique within its group
  CandidateExpression candidate;
};

struct GroupState {
  HoleGroup group;
  std::string var;  // v<N>, N being the group index
  std::vector<SessionCandidate> candidates;  // ranked
  // Indices into `candidates` per syntax type, in rank order.
  std::array<std::vector<size_t>, kSyntaxTypeCount> buckets;
  double recommend_seconds = 0.0;  // synthesize + rank time, not part of state
};

struct Assignment {
  std::string choice;  // candidate id, constant text or expression text
  ExprPtr expression;  // may mention other group variables
  ExprPtr expanded;    // group variables replaced by their assignments
};

struct EmitResult {
  std::string code;
  bool complete = true;  // no placeholders left
};

// One live integration of a pattern. Every mutation is recorded as an
// event; replaying the events on the same engine rebuilds the same state.
// Not internally synchronized.
class Session {
 public:
  // Throws UnknownPattern, UnknownType for unresolvable context types and
  // ModelMismatch when the pattern calls members the graph lacks.
  static Session open(std::shared_ptr<const Engine> engine, std::string id,
                      const std::string& pattern_id, std::vector<Param> context, uint64_t seed);
  // Rebuilds a session from its JSON-lines event log.
  static Session replay(std::shared_ptr<const Engine> engine, std::string_view log);

  // `choice` is a candidate id, the exact text of a candidate, or a constant
  // literal for a literal-typed group. Throws UnknownGroup, TypeMismatch, or
  // PreconditionError when the group is already filled.
  void fill(const std::string& group_id, const std::string& choice);
  // Fills a group with an arbitrary expression over the context and the
  // variables of filled groups. Throws TypeMismatch when it does not fit.
  void fill_expression(const std::string& group_id, const std::string& text);
  // Throws PreconditionError when there is nothing to undo.
  void undo();

  bool complete() const;
  EmitResult emit() const;
  std::string emit_code() const { return emit().code; }

  const std::string& id() const { return id_; }
  const ScsPattern& pattern() const { return *pattern_; }
  const PatternAnalysis& analysis() const { return *analysis_; }
  const std::vector<Param>& context() const { return context_; }
  uint64_t seed() const { return seed_; }
  const std::vector<GroupState>& groups() const { return state_.groups; }
  const std::vector<std::optional<Assignment>>& assignments() const {
    return state_.assignments;
  }
  const ExampleRanking& ranking() const { return state_.ranking; }
  size_t group_index(const std::string& group_id) const;  // throws UnknownGroup
  // JSON lines, oldest first; the first event is always "open".
  const std::vector<std::string>& events() const { return events_; }
  size_t history_depth() const { return history_.size(); }
  // Replaces group variables with their assigned expressions.
  ExprPtr expand(const ExprPtr& expr) const;
  // Full state comparison: candidates, assignments and ranking.
  bool same_state(const Session& other) const;
  // Payload of GET /sessions/{id}; `top` limits the example list.
  std::string state_json(int top = 10) const;

 private:
  struct State {
    std::vector<GroupState> groups;
    std::vector<std::optional<Assignment>> assignments;
    ExampleRanking ranking;
  };

  Session() = default;
  void assign(size_t g, std::string choice, ExprPtr expr);
  void refresh_candidates();
  void rerank();
  std::vector<Param> locals() const;

  std::shared_ptr<const Engine> engine_;
  std::string id_;
  const ScsPattern* pattern_ = nullptr;
  std::shared_ptr<const PatternAnalysis> analysis_;
  std::vector<Param> context_;
  uint64_t seed_ = 0;
  // group_exprs_[e][g] and priors_[e] over analysis_->example_ids.
  std::vector<std::vector<ExprPtr>> group_exprs_;
  std::vector<double> priors_;
  State state_;
  std::vector<State> history_;
  std::vector<std::string> events_;
};

struct SimulationReport {
  std::string pattern_id;
  std::string goal_example_id;
  uint64_t seed = 0;
  int initial_rank = 0;
  std::vector<int> trajectory;  // goal rank after each fill, group order
  int final_rank = 0;
  // Rank of the goal's expression in its syntax-type bucket, per group.
  std::vector<std::optional<int>> candidate_ranks;
  std::optional<double> mrr;  // absent without groups
  std::vector<double> response_seconds;
  std::vector<std::string> group_ids;
  std::string code;

  std::string to_json() const;
};

// Simulated user: per group, takes the goal's expression for that group,
// looks it up in the bucket of its syntax type and fills the best structural
// match; when no candidate matches, the goal expression is filled by hand
// and the group counts as a miss. The context holds the goal's parameters
// and free variables. Throws NoEmbedding and PreconditionError for unknown
// goals.
SimulationReport simulate(std::shared_ptr<const Engine> engine, const std::string& pattern_id,
                          const std::string& goal_example_id, uint64_t seed);

// Sessions by id with their event logs persisted under
// `<data_dir>/sessions/<id>.jsonl` when a data directory is set. Existing
// logs are replayed on construction.
class SessionStore {
 public:
  explicit SessionStore(std::shared_ptr<const Engine> engine,
                        std::optional<std::filesystem::path> data_dir = std::nullopt);

  // Returns the new session id.
  std::string open(const std::string& pattern_id, std::vector<Param> context, uint64_t seed);
  // Runs `fn` with the session locked. Throws UnknownSession.
  template <typename Fn>
  auto with_session(const std::string& id, Fn&& fn) {
    std::shared_ptr<Slot> slot = find(id);
    std::lock_guard<std::mutex> lock(slot->mu);
    size_t before = slot->session.events().size();
    if constexpr (std::is_void_v<decltype(fn(slot->session))>) {
      fn(slot->session);
      append_events(*slot, before);
    } else {
      auto result = fn(slot->session);
      append_events(*slot, before);
      return result;
    }
  }
  std::vector<std::string> ids() const;
  const Engine& engine() const { return *engine_; }

 private:
  struct Slot {
    explicit Slot(Session s) : session(std::move(s)) {}
    std::mutex mu;
    Session session;
  };
  std::shared_ptr<Slot> find(const std::string& id) const;
  void append_events(const Slot& slot, size_t from) const;
  std::filesystem::path log_path(const std::string& id) const;

  std::shared_ptr<const Engine> engine_;
  std::optional<std::filesystem::path> data_dir_;
  mutable std::shared_mutex mu_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  uint64_t next_id_ = 1;
};

}  // namespace patternforge

#endif  // PATTERNFORGE_SESSION_HPP_
