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


#ifndef PATTERNFORGE_API_GRAPH_HPP_
#define PATTERNFORGE_API_GRAPH_HPP_

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace patternforge {

// The first five kinds are the knowledge-graph node types of the original
// design; kField houses fields, which expression synthesis consumes.
enum class NodeKind { kClass, kInterface, kMethod, kEnumClass, kEnumConstant, kField };

enum class EdgeKind {
  kHaveMethod,    // owner type -> method
  kReturn,        // method -> return type
  kHaveConstant,  // enum -> constant
  kImplement,     // type -> interface
  kExtend,        // type -> type
  kIterable,      // container -> element
  kHaveField,     // owner type -> field
  kFieldType,     // field -> field type
};

std::string_view node_kind_name(NodeKind k);
std::string_view edge_kind_name(EdgeKind k);

struct ParamInfo {
  std::string name;
  std::string type;
  std::string doc;
};

struct Node {
  int id = 0;
  NodeKind kind = NodeKind::kClass;
  std::string name;
  std::string owner;  // declaring type for members
  std::string comment;
  // Unique handle: the type name, "Owner.name(T1,T2)" for methods,
  // "Owner.<init>(T1)" for constructors, "Owner.name" for fields/constants.
  std::string ref;
  bool builtin = false;
  bool is_abstract = false;
  // kMethod
  std::vector<ParamInfo> params;
  bool is_static = false;
  bool is_constructor = false;
  std::string return_type;  // empty for void and constructors
  // kField
  std::string field_type;

  bool is_type() const {
    return kind == NodeKind::kClass || kind == NodeKind::kInterface || kind == NodeKind::kEnumClass;
  }
  // Type of the value this member produces (constructors produce the owner).
  std::string produced_type() const;
};

struct Edge {
  EdgeKind kind;
  int from;
  int to;
};

enum class CreatorKind { kConstructor, kMethod, kField, kEnumConstant };

// A way to obtain a value of some type.
struct Creator {
  CreatorKind kind;
  int node;
  std::string owner;
  std::string member;
  std::string ref;
  std::string produced_type;
  bool is_static = false;
};

// Immutable API knowledge graph. Built from the JSON model document
// described in docs/api-model.md; every query is const.
class ApiGraph {
 public:
  ApiGraph();

  static ApiGraph from_model_json(std::string_view text);
  static ApiGraph from_model_file(const std::filesystem::path& path);
  // Accepts either an API model document or a serialized graph cache.
  static ApiGraph load(const std::filesystem::path& path);
  static ApiGraph from_cache_json(std::string_view text);

  // Deterministic serialization; identical models give identical bytes.
  std::string to_cache_json() const;
  const std::string& model_hash() const { return model_hash_; }

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Node& node(int id) const { return nodes_.at(static_cast<size_t>(id)); }
  // Methods, fields and enum constants declared by the model.
  size_t member_count() const;

  bool has_type(std::string_view name) const;
  const Node* type_node(std::string_view name) const;
  const Node* member(std::string_view ref) const;
  std::vector<std::string> type_names() const;

  bool is_enum(std::string_view type) const;
  bool is_interface(std::string_view type) const;

  // True iff from == to or `to` is reachable from `from` over extend and
  // implement edges. Throws UnknownType.
  bool is_assignable(std::string_view from, std::string_view to) const;
  // Lenient variant for typing: "null" fits any reference type, an empty or
  // "unknown" type fits anything, and unknown names never throw.
  bool accepts(std::string_view slot, std::string_view value_type) const;

  // Reflexive-transitive supertypes; empty for unknown names.
  const std::set<std::string>& supertypes(std::string_view type) const;
  const std::set<std::string>& subtypes(std::string_view type) const;

  // Constructors of assignable subtypes, methods returning an assignable
  // type, fields of an assignable type and, for enums, their constants.
  // Ordered by kind, owner, member and reference. Throws UnknownType.
  std::vector<Creator> creators_of(std::string_view type) const;
  // Creators producing exactly `type`.
  std::vector<Creator> exact_creators_of(std::string_view type) const;

  // Methods named `name` visible on `owner` (own and inherited), with
  // own declarations first.
  std::vector<const Node*> find_methods(std::string_view owner, std::string_view name) const;
  std::vector<const Node*> constructors_of(std::string_view type) const;
  // The overload a call resolves to: the first candidate whose parameters
  // accept `arg_types`. Candidates come from find_methods, or from
  // constructors_of when `name` is "<init>". Null when none fits.
  const Node* resolve_call(std::string_view owner, std::string_view name,
                           const std::vector<std::string>& arg_types) const;
  // Every method with this name, across all types.
  std::vector<const Node*> methods_named(std::string_view name) const;
  const Node* find_field(std::string_view owner, std::string_view name) const;
  std::vector<const Node*> fields_named(std::string_view name) const;
  const Node* enum_constant(std::string_view enum_type, std::string_view name) const;
  std::vector<const Node*> enum_constants(std::string_view enum_type) const;
  // Element type of an iterable container, or empty.
  std::string iterable_element(std::string_view type) const;

 private:
  void add_edge(EdgeKind kind, int from, int to);
  void index();
  Creator creator_from(const Node& n) const;

  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::string model_hash_;
  std::map<std::string, int, std::less<>> types_;
  std::map<std::string, int, std::less<>> members_;
  std::map<std::string, std::vector<int>, std::less<>> members_of_;
  std::map<std::string, std::set<std::string>, std::less<>> supers_;
  std::map<std::string, std::set<std::string>, std::less<>> subs_;
  std::map<std::string, std::vector<int>, std::less<>> by_produced_type_;
  std::map<std::string, std::string, std::less<>> iterable_;
};

// Built-in leaf types present in every graph.
const std::vector<std::string>& builtin_types();

}  // namespace patternforge

#endif  // PATTERNFORGE_API_GRAPH_HPP_
