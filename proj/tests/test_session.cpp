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

#include <filesystem>
#include <random>
#include <unistd.h>

#include "fixtures.hpp"
#include "patternforge/errors.hpp"
#include "patternforge/miner.hpp"
#include "patternforge/parser.hpp"
#include "patternforge/printer.hpp"
#include "patternforge/session.hpp"

using namespace patternforge;

namespace {

std::shared_ptr<const Engine> engine() {
  static const auto kEngine = [] {
    const auto& f = fixtures::poi_mini();
    return std::make_shared<const Engine>(f.graph, f.corpus, f.patterns);
  }();
  return kEngine;
}

const std::string& fill_pattern_id() {
  static const std::string kId = pattern_id(fixtures::fill_pattern_tokens());
  return kId;
}

Session fill_session(uint64_t seed = 1) {
  return Session::open(engine(), "s-test", fill_pattern_id(), {{"wb", "Workbook"}}, seed);
}

// Uses of `name` at hole positions; initializers of the group variables
// themselves are skipped since manual fills may mention other groups.
int variable_uses(const std::vector<Statement>& stmts, const std::string& name,
                  const std::set<std::string>& group_vars) {
  int n = 0;
  for (const auto& s : stmts) {
    if (!(s.kind == StmtKind::kDeclaration && group_vars.count(s.name))) {
      visit(s.expr, [&](const ExprPtr& e) { n += e->kind == ExprKind::kVariable && e->name == name; });
    }
    n += variable_uses(s.body, name, group_vars);
    for (const auto& c : s.catches) n += variable_uses(c.body, name, group_vars);
  }
  return n;
}

// Literal slots in a candidate replaced by sample constants.
std::string concretize(std::string text) {
  static const std::vector<std::pair<std::string, std::string>> kSamples = {
      {"int", "0"}, {"long", "0L"}, {"short", "(short) 0"}, {"double", "0.0"},
      {"boolean", "true"}, {"char", "'a'"}, {"String", "\"text\""}};
  for (const auto& [type, value] : kSamples) {
    const std::string slot = "\xE2\x9F\xA8" + type + "\xE2\x9F\xA9";
    for (size_t pos; (pos = text.find(slot)) != std::string::npos;) text.replace(pos, slot.size(), value);
  }
  return text;
}

// Fills every open group with a random complete candidate. Literal slots
// get sample constants when no candidate is complete.
void fill_randomly(Session& s, std::mt19937_64& rng) {
  for (size_t g = 0; g < s.groups().size(); ++g) {
    if (s.assignments()[g]) continue;
    const auto& gs = s.groups()[g];
    std::vector<std::string> complete;
    for (const auto& c : gs.candidates) {
      if (c.candidate.incompleteness() == 0 && complete.size() < 5) complete.push_back(c.id);
    }
    if (!complete.empty()) {
      s.fill(gs.group.id, complete[rng() % complete.size()]);
    } else {
      REQUIRE_FALSE(gs.candidates.empty());
      s.fill_expression(gs.group.id, concretize(gs.candidates.front().candidate.text));
    }
  }
}

}  // namespace

TEST_CASE("opening the cell fill pattern") {
  Session s = fill_session();
  REQUIRE(s.groups().size() == 4);
  std::vector<std::string> types;
  std::vector<std::string> vars;
  for (const auto& g : s.groups()) {
    types.push_back(g.group.type);
    vars.push_back(g.var);
  }
  CHECK(types == std::vector<std::string>{"Workbook", "short", "FillPatternType", "Cell"});
  CHECK(vars == std::vector<std::string>{"v0", "v1", "v2", "v3"});
  CHECK(s.groups()[1].group.description == "the color index to set");
  CHECK(s.groups()[0].candidates.at(0).candidate.text == "wb");
  CHECK_FALSE(s.complete());
  CHECK_FALSE(s.emit().complete);
  CHECK(s.ranking().order.size() == 15);
  // Enum groups list their constants in the Enumeration bucket.
  CHECK(s.groups()[2].buckets[static_cast<size_t>(SyntaxType::kEnumeration)].size() == 19);
}

TEST_CASE("open preconditions") {
  CHECK_THROWS_AS(Session::open(engine(), "x", "p-missing", {}, 1), UnknownPattern);
  CHECK_THROWS_AS(Session::open(engine(), "x", fill_pattern_id(), {{"v0", "Workbook"}}, 1), PreconditionError);
  CHECK_THROWS_AS(Session::open(engine(), "x", fill_pattern_id(), {{"a", "Nope"}}, 1), UnknownType);
}

TEST_CASE("fill errors") {
  Session s = fill_session();
  CHECK_THROWS_AS(s.fill("g9", "c0"), UnknownGroup);
  CHECK_THROWS_AS(s.fill("g0", "c999999"), PreconditionError);
  CHECK_THROWS_AS(s.fill("g0", "42"), TypeMismatch);
  CHECK_THROWS_AS(s.fill("g1", "\"red\""), TypeMismatch);
  CHECK_THROWS_AS(s.fill("g1", "70000"), TypeMismatch);
  CHECK_THROWS_AS(s.fill_expression("g0", "nobody.createSheet()"), TypeMismatch);
  CHECK_THROWS_AS(s.fill_expression("g0", "wb.createSheet()"), TypeMismatch);
  CHECK_THROWS_AS(s.undo(), PreconditionError);
  s.fill("g1", "10");
  CHECK_THROWS_AS(s.fill("g1", "11"), PreconditionError);
  CHECK(s.events().size() == 2);
}

TEST_CASE("undo after fill restores the state") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 10; ++round) {
    Session s = fill_session(round);
    std::vector<Session> snapshots;
    for (size_t g = 0; g < s.groups().size(); ++g) {
      snapshots.push_back(s);
      const auto& gs = s.groups()[g];
      s.fill(gs.group.id, gs.candidates[rng() % std::min<size_t>(gs.candidates.size(), 4)].id);
    }
    CHECK(s.complete());
    for (size_t g = snapshots.size(); g-- > 0;) {
      s.undo();
      CHECK(s.same_state(snapshots[g]));
      CHECK(s.state_json() == snapshots[g].state_json());
    }
    CHECK(s.history_depth() == 0);
  }
}

TEST_CASE("replaying the event log reproduces the session") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 8; ++round) {
    Session s = fill_session(100 + round);
    fill_randomly(s, rng);
    s.undo();
    s.fill_expression(s.groups().back().group.id, "v0.createSheet().createRow(1).createCell(2)");
    std::string log;
    for (const auto& e : s.events()) log += e + "\n";
    Session r = Session::replay(engine(), log);
    CHECK(r.same_state(s));
    CHECK(r.state_json() == s.state_json());
    CHECK(r.emit_code() == s.emit_code());
  }
  CHECK_THROWS_AS(Session::replay(engine(), ""), PreconditionError);
  CHECK_THROWS_AS(Session::replay(engine(), "{\"event\":\"fill\"}\n"), PreconditionError);
}

TEST_CASE("emitted code parses and reuses each group variable once per hole") {
  std::mt19937_64 rng(7);
  for (const auto& p : engine()->patterns()) {
    Session s = Session::open(engine(), "s", p.id, {{"wb", "Workbook"}}, 9);
    fill_randomly(s, rng);
    CHECK(s.complete());
    EmitResult out = s.emit();
    CAPTURE(p.id);
    CAPTURE(out.code);
    CHECK(out.complete);
    CHECK(out.code.find("\xE2\x9F\xA8") == std::string::npos);
    ScsExample parsed = parse_example(out.code, s.context());
    CHECK(parsed.free_vars.empty());
    std::set<std::string> vars;
    for (const auto& g : s.groups()) vars.insert(g.var);
    for (size_t g = 0; g < s.groups().size(); ++g) {
      CHECK(variable_uses(parsed.statements, s.groups()[g].var, vars) ==
            static_cast<int>(s.groups()[g].group.holes.size()));
    }
    CHECK(print(parsed) == out.code);
  }
}

TEST_CASE("manual expressions may use filled group variables") {
  Session s = fill_session();
  s.fill("g0", "wb");
  s.fill_expression("g3", "v0.createSheet().createRow(0).createCell(0)");
  CHECK(s.assignments()[3]->choice == "v0.createSheet().createRow(0).createCell(0)");
  CHECK(to_string(s.assignments()[3]->expanded) == "wb.createSheet().createRow(0).createCell(0)");
  CHECK(s.emit_code().find("Cell v3 = v0.createSheet().createRow(0).createCell(0);") != std::string::npos);
}

TEST_CASE("constants and placeholders") {
  Session s = fill_session();
  s.fill("g1", "(short) 10");
  s.fill("g2", "FillPatternType.SOLID_FOREGROUND");
  CHECK(to_string(s.assignments()[1]->expression) == "(short) 10");
  std::string code = s.emit_code();
  CHECK(code.find("short v1 = (short) 10;") != std::string::npos);
  CHECK(code.find("\xE2\x9F\xA8" "Cell\xE2\x9F\xA9") != std::string::npos);
}

TEST_CASE("filling the goal's expressions promotes the goal") {
  const auto& f = fixtures::poi_mini();
  for (const auto& id : engine()->analysis(fill_pattern_id())->example_ids) {
    auto report = simulate(engine(), fill_pattern_id(), id, 11);
    CAPTURE(id);
    REQUIRE(report.trajectory.size() == 4);
    int last = report.trajectory.front();
    for (int r : report.trajectory) {
      CHECK(r <= last);
      last = r;
    }
    CHECK(report.final_rank == 1);
    REQUIRE(report.mrr);
    CHECK(*report.mrr >= 0.0);
    CHECK(*report.mrr <= 1.0);
    CHECK(report.response_seconds.size() == 4);
    CHECK_NOTHROW(parse_example(report.code, {}));
  }
  (void)f;
  auto r = simulate(engine(), fill_pattern_id(), "color-file", 11);
  CHECK(r.candidate_ranks.size() == 4);
  CHECK_THROWS_AS(simulate(engine(), fill_pattern_id(), "nope", 1), PreconditionError);
}

TEST_CASE("a pattern without holes") {
  auto g = ApiGraph::from_model_json(
      R"({"types":[{"name":"K","kind":"class","methods":[{"name":"init","static":true}]}]})");
  auto corpus = parse_corpus("#example k0 ()\nK.init();\n#end\n#example k1 ()\nK.init();\n#end\n");
  auto p = make_pattern({"K.init()"}, 2, g);
  CHECK(p.holes.empty());
  auto eng = std::make_shared<const Engine>(g, corpus, std::vector<ScsPattern>{p});
  Session s = Session::open(eng, "s", p.id, {}, 1);
  CHECK(s.groups().empty());
  CHECK(s.complete());
  CHECK(s.emit_code() == "K.init();\n");
  auto report = simulate(eng, p.id, "k0", 1);
  CHECK_FALSE(report.mrr.has_value());
  CHECK(report.trajectory.empty());
}

TEST_CASE("a pattern calling a member the model lacks is a model mismatch") {
  const auto& f = fixtures::poi_mini();
  auto g = ApiGraph::from_model_json(
      R"({"types":[{"name":"K","kind":"class","methods":[{"name":"init","static":true}]}]})");
  auto p = make_pattern({"K.init()"}, 2, g);
  p.calls[0].method_ref = "K.gone()";
  auto eng = std::make_shared<const Engine>(f.graph, f.corpus, std::vector<ScsPattern>{p});
  CHECK_THROWS_AS(Session::open(eng, "s", p.id, {}, 1), ModelMismatch);
}

TEST_CASE("the session store persists and replays logs") {
  auto dir = std::filesystem::temp_directory_path() / ("pf-store-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::string id;
  std::string state;
  {
    SessionStore store(engine(), dir);
    id = store.open(fill_pattern_id(), {{"wb", "Workbook"}}, 4);
    CHECK(id == "s-1");
    store.with_session(id, [](Session& s) { s.fill("g0", "c0"); });
    store.with_session(id, [](Session& s) { s.fill("g1", "(short) 3"); });
    store.with_session(id, [](Session& s) { s.undo(); });
    state = store.with_session(id, [](Session& s) { return s.state_json(); });
    CHECK_THROWS_AS(store.with_session("s-9", [](Session&) {}), UnknownSession);
  }
  CHECK(std::filesystem::exists(dir / "sessions" / (id + ".jsonl")));
  SessionStore again(engine(), dir);
  CHECK(again.ids() == std::vector<std::string>{id});
  CHECK(again.with_session(id, [](Session& s) { return s.state_json(); }) == state);
  CHECK(again.open(fill_pattern_id(), {}, 1) == "s-2");
  std::filesystem::remove_all(dir);
}
