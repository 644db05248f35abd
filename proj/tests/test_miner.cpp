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

#include <algorithm>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "patternforge/errors.hpp"
#include "patternforge/linearize.hpp"
#include "patternforge/miner.hpp"
#include "patternforge/typing.hpp"

using namespace patternforge;

namespace {

std::map<oracle::Sequence, int> as_map(const std::vector<MinedSequence>& mined) {
  std::map<oracle::Sequence, int> out;
  for (const auto& m : mined) out[m.tokens] = m.support;
  return out;
}

std::vector<oracle::Sequence> random_db(std::mt19937_64& rng, int n, int len, int alphabet) {
  std::vector<oracle::Sequence> db(n);
  for (auto& s : db) {
    int l = std::uniform_int_distribution<int>(0, len)(rng);
    for (int i = 0; i < l; ++i) {
      s.push_back("T.m" + std::to_string(std::uniform_int_distribution<int>(0, alphabet - 1)(rng)) + "()");
    }
  }
  return db;
}

}  // namespace

TEST_CASE("support threshold rounds up") {
  CHECK(support_threshold(0.05, 79) == 4);
  CHECK(support_threshold(0.5, 4) == 2);
  CHECK(support_threshold(0.01, 10) == 1);
  CHECK(support_threshold(1.0, 7) == 7);
  MinerConfig bad;
  bad.min_support_fraction = 0;
  CHECK_THROWS_AS(bad.validate(), PreconditionError);
  bad.min_support_fraction = 0.5;
  bad.min_length = 0;
  CHECK_THROWS_AS(bad.validate(), PreconditionError);
}

TEST_CASE("closed sequences on a small database") {
  std::vector<oracle::Sequence> db = {{"A.a()", "A.b()", "A.c()"},
                                      {"A.a()", "A.b()", "A.c()"},
                                      {"A.a()", "A.c()"}};
  MinerConfig cfg;
  cfg.min_support_fraction = 0.6;
  cfg.min_length = 1;
  auto got = as_map(mine_sequences(db, cfg));
  std::map<oracle::Sequence, int> want = {{{"A.a()", "A.c()"}, 3}, {{"A.a()", "A.b()", "A.c()"}, 2}};
  CHECK(got == want);
  cfg.closed_only = false;
  CHECK(mine_sequences(db, cfg).size() == 7);
}

TEST_CASE("mine_sequences matches brute force on random databases") {
  std::mt19937_64 rng(42);
  for (int round = 0; round < 80; ++round) {
    auto db = random_db(rng, std::uniform_int_distribution<int>(1, 8)(rng), 7, 4);
    MinerConfig cfg;
    cfg.min_support_fraction = std::uniform_real_distribution<double>(0.1, 1.0)(rng);
    cfg.min_length = std::uniform_int_distribution<int>(1, 3)(rng);
    cfg.closed_only = round % 4 != 0;
    int t = support_threshold(cfg.min_support_fraction, db.size());
    CAPTURE(round);
    CHECK(as_map(mine_sequences(db, cfg)) ==
          oracle::closed_frequent(db, t, cfg.min_length, cfg.closed_only));
  }
}

TEST_CASE("control tokens do not count towards min_length") {
  std::vector<oracle::Sequence> db = {{"TRY", "A.a()", "CATCH(E)", "END-TRY"},
                                      {"TRY", "A.a()", "CATCH(E)", "END-TRY"}};
  MinerConfig cfg;
  cfg.min_support_fraction = 1.0;
  cfg.min_length = 2;
  CHECK(mine_sequences(db, cfg).empty());
  cfg.min_length = 1;
  auto got = mine_sequences(db, cfg);
  REQUIRE(got.size() == 1);
  CHECK(got[0].tokens == db[0]);
}

TEST_CASE("mining is invariant under corpus permutation") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 20; ++round) {
    auto rc = oracle::random_call_corpus(rng, 10, 6, 4);
    ApiGraph g = ApiGraph::from_model_json(rc.model_json);
    MinerConfig cfg;
    cfg.min_support_fraction = 0.3;
    cfg.min_length = 1;
    auto typed = annotate_corpus(rc.examples, g);
    auto a = mine(typed, cfg, g);
    auto shuffled = typed;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto b = mine(shuffled, cfg, g);
    CHECK(a == b);
  }
}

TEST_CASE("random corpora linearize as generated") {
  std::mt19937_64 rng(9);
  for (int round = 0; round < 20; ++round) {
    auto rc = oracle::random_call_corpus(rng, 6, 5, 3);
    ApiGraph g = ApiGraph::from_model_json(rc.model_json);
    auto typed = annotate_corpus(rc.examples, g);
    for (size_t i = 0; i < typed.size(); ++i) CHECK(token_texts(linearize(typed[i])) == rc.sequences[i]);
  }
}

TEST_CASE("cell fill pattern is mined from the fixture corpus with seven holes") {
  const auto& f = fixtures::poi_mini();
  MinerConfig cfg;
  auto mined = mine(f.typed, cfg, f.graph);
  const ScsPattern* fill = nullptr;
  for (const auto& p : mined) {
    if (p.tokens == fixtures::fill_pattern_tokens()) fill = &p;
  }
  REQUIRE(fill);
  CHECK(fill->support == 15);
  CHECK(fill->holes.size() == 7);
  CHECK(fill->id == pattern_id(fixtures::fill_pattern_tokens()));
  std::vector<std::string> types;
  for (const auto& h : fill->holes) types.push_back(h.declared_type);
  CHECK(types == std::vector<std::string>{"Workbook", "CellStyle", "short", "CellStyle",
                                          "FillPatternType", "Cell", "CellStyle"});
  CHECK(fill->calls.at(0).receiver_hole == std::optional<std::string>("hole-0"));
  CHECK(fill->calls.at(1).arg_holes == std::vector<std::string>{"hole-2"});
  // The fixture file is exactly what mining produces.
  CHECK(mined == f.patterns);
}

TEST_CASE("patterns json round trip and shorthand") {
  const auto& f = fixtures::poi_mini();
  CHECK(patterns_from_json(patterns_to_json(f.patterns), f.graph) == f.patterns);
  auto shorthand = patterns_from_json(
      R"j({"patterns":[{"tokens":["Workbook.createCellStyle()","Cell.setCellStyle(CellStyle)"],"support":3}]})j",
      f.graph);
  REQUIRE(shorthand.size() == 1);
  CHECK(shorthand[0].holes.size() == 3);
  CHECK(shorthand[0].support == 3);
  CHECK_THROWS_AS(make_pattern({"Workbook.fly()"}, 1, f.graph), UnknownMethodToken);
}

TEST_CASE("review decisions feed the denylist") {
  const auto& f = fixtures::poi_mini();
  std::string review = review_json(f.patterns);
  CHECK(rejected_ids(review).empty());
  std::string id = f.patterns.at(0).id;
  auto pos = review.find("\"pending\"");
  REQUIRE(pos != std::string::npos);
  review.replace(pos, 9, "\"reject\"");
  auto denied = rejected_ids(review);
  CHECK(denied == std::set<std::string>{id});
  auto kept = apply_denylist(f.patterns, denied);
  CHECK(kept.size() == f.patterns.size() - 1);
  for (const auto& p : kept) CHECK(p.id != id);
}

TEST_CASE("fixture hole counts match the hand-counted manifest") {
  const auto& f = fixtures::poi_mini();
  std::istringstream in(fixtures::read(fixtures::dir() / "poi-mini" / "hole_counts.tsv"));
  std::map<std::string, size_t> want;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    want[line.substr(0, tab)] = std::stoul(line.substr(tab + 1));
  }
  size_t total = 0;
  for (const auto& p : f.patterns) {
    CAPTURE(p.id);
    REQUIRE(want.count(p.id));
    CHECK(p.holes.size() == want[p.id]);
    total += p.holes.size();
  }
  CHECK(total == want["total"]);
  CHECK(want.size() == f.patterns.size() + 1);
}
