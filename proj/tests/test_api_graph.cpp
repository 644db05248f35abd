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


#include <doctest.h>

#include <functional>
#include <json.hpp>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "patternforge/api_graph.hpp"
#include "patternforge/errors.hpp"

using namespace patternforge;
using nlohmann::json;

namespace {

int count_edges(const ApiGraph& g, EdgeKind kind, const std::string& from_ref) {
  const Node* from = g.has_type(from_ref) ? g.type_node(from_ref) : g.member(from_ref);
  REQUIRE(from);
  int n = 0;
  for (const auto& e : g.edges()) n += e.kind == kind && e.from == from->id;
  return n;
}

std::string expect_model_error(const std::string& text) {
  try {
    ApiGraph::from_model_json(text);
  } catch (const ModelError& e) {
    return e.path();
  }
  FAIL("expected ModelError");
  return {};
}

}  // namespace

TEST_CASE("FillPatternType has 19 constants") {
  const auto& g = fixtures::poi_mini().graph;
  CHECK(g.is_enum("FillPatternType"));
  CHECK(count_edges(g, EdgeKind::kHaveConstant, "FillPatternType") == 19);
  CHECK(g.enum_constants("FillPatternType").size() == 19);
  CHECK(g.enum_constant("FillPatternType", "SOLID_FOREGROUND"));
  CHECK_FALSE(g.enum_constant("FillPatternType", "PURPLE"));
}

TEST_CASE("fixture graph subtyping") {
  const auto& g = fixtures::poi_mini().graph;
  CHECK(g.is_assignable("XSSFWorkbook", "Workbook"));
  CHECK(g.is_assignable("FileInputStream", "InputStream"));
  CHECK(g.is_assignable("IOException", "Exception"));
  CHECK_FALSE(g.is_assignable("Workbook", "XSSFWorkbook"));
  CHECK(g.is_assignable("Cell", "Cell"));
  CHECK_THROWS_AS(g.is_assignable("Cell", "Nope"), UnknownType);
  CHECK_THROWS_AS(g.is_assignable("Nope", "Cell"), UnknownType);
  CHECK(g.accepts("Cell", "null"));
  CHECK_FALSE(g.accepts("int", "null"));
}

TEST_CASE("creators of CellStyle and of an enum") {
  const auto& g = fixtures::poi_mini().graph;
  auto cs = g.creators_of("CellStyle");
  bool has_create = false;
  for (const auto& c : cs) {
    CHECK(g.is_assignable(c.produced_type, "CellStyle"));
    has_create |= c.ref == "Workbook.createCellStyle()";
  }
  CHECK(has_create);
  auto fp = g.creators_of("FillPatternType");
  int constants = 0;
  for (const auto& c : fp) constants += c.kind == CreatorKind::kEnumConstant;
  CHECK(constants == 19);
  CHECK_THROWS_AS(g.creators_of("Nope"), UnknownType);
}

TEST_CASE("cache round trip is byte stable") {
  const auto& g = fixtures::poi_mini().graph;
  std::string a = g.to_cache_json();
  ApiGraph back = ApiGraph::from_cache_json(a);
  CHECK(back.to_cache_json() == a);
  CHECK(back.model_hash() == g.model_hash());
  CHECK(back.nodes().size() == g.nodes().size());
  CHECK(back.edges().size() == g.edges().size());
  ApiGraph again = ApiGraph::from_model_file(fixtures::dir() / "poi-mini" / "model.json");
  CHECK(again.to_cache_json() == a);
}

TEST_CASE("malformed models report a path") {
  CHECK(expect_model_error("[1]") == "/");
  CHECK(expect_model_error("{\"types\": 3}") == "/types");
  CHECK(expect_model_error(R"({"types":[{"name":"A","kind":"class","methods":[{"name":"f","returns":"Zed"}]}]})")
            .starts_with("/types/0/methods/0"));
  CHECK(expect_model_error(R"({"types":[{"name":"A","kind":"class"},{"name":"A","kind":"class"}]})") ==
        "/types/1/name");
  CHECK(expect_model_error(R"({"types":[{"name":"A","kind":"class","extends":"B"},{"name":"B","kind":"class","extends":"A"}]})") ==
        "/types");
  CHECK(expect_model_error(R"({"types":[{"name":"I","kind":"interface","methods":[{"constructor":true}]}]})")
            .starts_with("/types/0/methods/0"));
  CHECK(expect_model_error(R"({"types":[{"name":"A","kind":"class","constants":["X"]}]})") ==
        "/types/0/constants");
}

TEST_CASE("is_assignable agrees with a DFS over random hierarchies") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 60; ++round) {
    int n = std::uniform_int_distribution<int>(2, 12)(rng);
    std::vector<bool> iface(n);
    std::vector<std::vector<int>> up(n);
    json types = json::array();
    for (int i = 0; i < n; ++i) {
      iface[i] = rng() % 3 == 0;
      json t = {{"name", "T" + std::to_string(i)}, {"kind", iface[i] ? "interface" : "class"}};
      std::vector<std::string> impl;
      std::vector<std::string> ext;
      for (int j = 0; j < i; ++j) {
        if (rng() % 4 != 0) continue;
        if (iface[j]) {
          (iface[i] ? ext : impl).push_back("T" + std::to_string(j));
          up[i].push_back(j);
        } else if (!iface[i] && ext.empty()) {
          ext.push_back("T" + std::to_string(j));
          up[i].push_back(j);
        }
      }
      if (!ext.empty()) t["extends"] = iface[i] ? json(ext) : json(ext[0]);
      if (!impl.empty()) t["implements"] = impl;
      types.push_back(t);
    }
    ApiGraph g = ApiGraph::from_model_json(json{{"types", types}}.dump());
    for (int a = 0; a < n; ++a) {
      std::vector<bool> seen(n);
      std::function<void(int)> dfs = [&](int x) {
        if (seen[x]) return;
        seen[x] = true;
        for (int y : up[x]) dfs(y);
      };
      dfs(a);
      for (int b = 0; b < n; ++b) {
        CAPTURE(a);
        CAPTURE(b);
        CHECK(g.is_assignable("T" + std::to_string(a), "T" + std::to_string(b)) == seen[b]);
      }
    }
  }
}

TEST_CASE("random models load and creators are sound") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 50; ++round) {
    ApiGraph g = ApiGraph::from_model_json(oracle::random_model_json(rng, 8));
    for (const auto& t : g.type_names()) {
      for (const auto& c : g.creators_of(t)) {
        CHECK(g.is_assignable(c.produced_type, t));
        if (c.kind == CreatorKind::kConstructor) {
          const Node* owner = g.type_node(c.produced_type);
          REQUIRE(owner);
          CHECK(owner->kind == NodeKind::kClass);
          CHECK_FALSE(owner->is_abstract);
        }
      }
      for (const auto& c : g.exact_creators_of(t)) CHECK(c.produced_type == t);
    }
    CHECK(ApiGraph::from_cache_json(g.to_cache_json()).to_cache_json() == g.to_cache_json());
  }
}

TEST_CASE("inherited methods resolve on subtypes") {
  const auto& g = fixtures::poi_mini().graph;
  auto ms = g.find_methods("XSSFWorkbook", "createCellStyle");
  REQUIRE_FALSE(ms.empty());
  CHECK(ms.front()->return_type == "CellStyle");
}

TEST_CASE("calls resolve to the first fitting overload, own members first") {
  ApiGraph g = ApiGraph::from_model_json(R"j({"types": [
    {"name": "C", "kind": "class", "methods": [
      {"name": "m", "returns": "int"},
      {"name": "p", "params": [{"type": "C"}], "returns": "int"},
      {"name": "C", "constructor": true}]},
    {"name": "D", "kind": "class", "extends": "C", "methods": [
      {"name": "m"},
      {"name": "p", "params": [{"type": "D"}], "returns": "String"}]}]})j");
  CHECK(g.resolve_call("C", "m", {})->ref == "C.m()");
  CHECK(g.resolve_call("D", "m", {})->ref == "D.m()");
  CHECK(g.resolve_call("D", "p", {"D"})->ref == "D.p(D)");
  CHECK(g.resolve_call("D", "p", {"C"})->ref == "C.p(C)");
  CHECK(g.resolve_call("C", "p", {"int"}) == nullptr);
  CHECK(g.resolve_call("C", "<init>", {})->ref == "C.<init>()");
  CHECK(g.resolve_call("D", "<init>", {}) == nullptr);
}
