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


// Acceptance suite. Prints one PASS/FAIL line per primary criterion and
// exits non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "patternforge/errors.hpp"
#include "patternforge/hole_analysis.hpp"
#include "patternforge/linearize.hpp"
#include "patternforge/miner.hpp"
#include "patternforge/parser.hpp"
#include "patternforge/printer.hpp"
#include "patternforge/ranker.hpp"
#include "patternforge/session.hpp"
#include "patternforge/synthesizer.hpp"
#include "patternforge/typing.hpp"

using namespace patternforge;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> problems;

  void fail(const std::string& why) {
    pass = false;
    if (problems.size() < 5) problems.push_back(why);
  }
};

int report(const std::string& name, const Outcome& o) {
  std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << "\n";
  for (const auto& p : o.problems) std::cout << "    " << p << "\n";
  return o.pass ? 0 : 1;
}

// ---------------------------------------------------------------------------

Outcome miner_oracle() {
  Outcome o;
  std::mt19937_64 rng(20261019);
  double mine_time = 0;
  int sequences = 0;
  for (int round = 0; round < 50; ++round) {
    auto rc = oracle::random_call_corpus(rng, 8, 8, 6);
    ApiGraph g = ApiGraph::from_model_json(rc.model_json);
    auto typed = annotate_corpus(rc.examples, g);
    MinerConfig cfg;
    cfg.min_support_fraction = std::uniform_real_distribution<double>(0.15, 0.9)(rng);
    cfg.min_length = std::uniform_int_distribution<int>(1, 3)(rng);
    auto t0 = Clock::now();
    auto mined = mine(typed, cfg, g);
    mine_time += seconds_since(t0);
    std::map<oracle::Sequence, int> got;
    for (const auto& p : mined) got[p.tokens] = p.support;
    auto want = oracle::closed_frequent(rc.sequences, support_threshold(cfg.min_support_fraction, typed.size()),
                                        cfg.min_length);
    sequences += static_cast<int>(want.size());
    if (got != want) {
      o.fail("corpus " + std::to_string(round) + ": " + std::to_string(got.size()) + " mined vs " +
             std::to_string(want.size()) + " expected");
    }
  }
  if (mine_time >= 5.0) o.fail("mining took " + std::to_string(mine_time) + " s");
  std::ostringstream d;
  d << "50 corpora, " << sequences << " closed sequences, mine() total " << mine_time << " s";
  o.detail = d.str();
  return o;
}

// ---------------------------------------------------------------------------

bool has_fallback(const ExprPtr& e) {
  bool found = false;
  visit(e, [&](const ExprPtr& x) { found |= x->kind == ExprKind::kPlaceholder && !is_constant_slot(*x); });
  return found;
}

Outcome synthesis_oracle() {
  Outcome o;
  std::mt19937_64 rng(4242);
  int graphs = 0;
  int compared = 0;
  int skipped = 0;
  int fallbacks = 0;
  int expressions = 0;
  const std::vector<std::string> targets = {"A", "B", "C", "D", "E", "int", "String"};
  while (graphs < 20) {
    ApiGraph g = ApiGraph::from_model_json(oracle::random_model_json(rng, 20));
    ++graphs;
    std::vector<Param> locals;
    if (rng() % 2) locals.push_back({"a", "A"});
    if (rng() % 2) locals.push_back({"c", "C"});
    for (int depth = 1; depth <= 3; ++depth) {
      SynthConfig cfg;
      cfg.max_depth = depth;
      cfg.per_type_cap = 0;
      for (const auto& target : targets) {
        auto want = oracle::enumerate_terms(g, locals, target, depth);
        if (!want) {
          ++skipped;
          continue;
        }
        auto got = synthesize_expressions(locals, target, cfg, g);
        std::set<std::string> complete;
        for (const auto& e : got) {
          ++expressions;
          if (!has_fallback(e)) complete.insert(to_string(e));
          auto typed = annotate_expression(e, locals, g);
          if (!type_checks(*typed, g, target)) o.fail("ill-typed " + to_string(e) + " for " + target);
          if (depth > 0 && ::patternforge::depth(*e) > depth) o.fail("too deep: " + to_string(e));
        }
        const std::string where = "graph " + std::to_string(graphs) + " depth " + std::to_string(depth) + " " + target;
        if (complete != *want) {
          o.fail(where + ": " + std::to_string(complete.size()) + " vs oracle " + std::to_string(want->size()));
        }
        const bool fallback = got.size() == 1 && got[0]->kind == ExprKind::kPlaceholder && !is_constant_slot(*got[0]);
        fallbacks += fallback;
        if (fallback == oracle::has_candidates(g, locals, target, depth)) {
          o.fail(where + ": placeholder fallback " + (fallback ? "fired" : "missing"));
        }
        ++compared;
      }
    }
  }
  std::ostringstream d;
  d << graphs << " graphs, " << compared << " (target, depth) cases, " << expressions << " expressions, "
    << fallbacks << " fallbacks, " << skipped << " skipped over the enumeration limit";
  o.detail = d.str();
  if (compared < 200) o.fail("too few comparisons");
  return o;
}

// ---------------------------------------------------------------------------

Outcome clustering_oracle() {
  Outcome o;
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> u(0, 1);
  int holes_total = 0;
  for (int round = 0; round < 100; ++round) {
    // Random resolution table: holes resolve to a few shared texts so that
    // degrees span the threshold.
    const int n = std::uniform_int_distribution<int>(1, 8)(rng);
    const int m = std::uniform_int_distribution<int>(1, 10)(rng);
    holes_total += n;
    ScsPattern p;
    p.id = "p-random";
    for (int h = 0; h < n; ++h) {
      Hole hole;
      hole.id = "hole-" + std::to_string(h);
      hole.declared_type = "int";
      p.holes.push_back(hole);
    }
    std::vector<std::vector<HoleResolution>> table(m);
    std::vector<std::vector<std::string>> text(m, std::vector<std::string>(n));
    for (int e = 0; e < m; ++e) {
      for (int h = 0; h < n; ++h) {
        HoleResolution r;
        r.hole_id = p.holes[h].id;
        if (rng() % 10 != 0) {
          text[e][h] = std::to_string(rng() % 3);
          r.expression = parse_expression(text[e][h]);
        }
        table[e].push_back(r);
      }
    }
    std::vector<std::vector<double>> degree(n, std::vector<double>(n, 1.0));
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        int both = 0;
        int same = 0;
        for (int e = 0; e < m; ++e) {
          if (text[e][a].empty() || text[e][b].empty()) continue;
          ++both;
          same += text[e][a] == text[e][b];
        }
        degree[a][b] = degree[b][a] = both ? static_cast<double>(same) / both : 0.0;
      }
    }
    ClusterConfig cfg;
    cfg.coref_threshold = round % 2 ? 0.8 : std::max(0.05, u(rng));
    std::vector<std::string> changeable;
    for (const auto& h : p.holes) changeable.push_back(h.id);
    auto groups = cluster_coref(p, changeable, table, cfg, fixtures::poi_mini().graph);
    std::vector<std::vector<int>> got;
    for (const auto& g : groups) {
      std::vector<int> members;
      for (const auto& id : g.holes) members.push_back(std::stoi(id.substr(5)));
      got.push_back(members);
    }
    if (got != oracle::complete_linkage(degree, cfg.coref_threshold)) {
      o.fail("resolution table " + std::to_string(round) + " differs from complete linkage");
    }
    // The same matrix straight through cluster_matrix.
    std::vector<std::vector<double>> raw(n, std::vector<double>(n, 1.0));
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) raw[a][b] = raw[b][a] = u(rng);
    }
    if (cluster_matrix(raw, cfg.coref_threshold).groups != oracle::complete_linkage(raw, cfg.coref_threshold)) {
      o.fail("degree matrix " + std::to_string(round) + " differs from complete linkage");
    }
  }
  o.detail = "100 resolution tables and 100 degree matrices, " + std::to_string(holes_total) + " holes";
  return o;
}

// ---------------------------------------------------------------------------

Outcome classifier_fidelity() {
  Outcome o;
  const auto& f = fixtures::poi_mini();
  std::istringstream in(fixtures::read(fixtures::dir() / "classifier" / "manifest.tsv"));
  std::string line;
  int rows = 0;
  int agree = 0;
  std::map<SyntaxType, int> hist;
  std::map<std::string, const ScsPattern*> by_id;
  for (const auto& p : f.patterns) by_id[p.id] = &p;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, '\t');) cols.push_back(c);
    if (cols.size() != 5) {
      o.fail("malformed manifest line: " + line);
      continue;
    }
    ++rows;
    auto want = syntax_type_from_name(cols[3]);
    if (!want || !by_id.count(cols[0])) {
      o.fail("bad manifest entry: " + line);
      continue;
    }
    const ScsPattern& p = *by_id[cols[0]];
    const Hole* hole = p.find_hole(cols[2]);
    ExprPtr e = hole ? resolve_hole(f.example(cols[1]), p, *hole, f.graph) : nullptr;
    if (!e || to_string(e) != cols[4]) {
      o.fail(cols[1] + "/" + cols[2] + " resolves to '" + to_string(e) + "', manifest says '" + cols[4] + "'");
      continue;
    }
    SyntaxType got = classify(*e);
    ++hist[*want];
    if (got == *want) {
      ++agree;
    } else {
      o.fail(cols[4] + ": " + std::string(syntax_type_name(got)) + " vs " + cols[3]);
    }
  }
  if (rows < 60) o.fail("manifest has only " + std::to_string(rows) + " rows");
  if (hist.size() != kSyntaxTypeCount) o.fail("manifest does not cover all five categories");

  // Category breakdown over every resolved hole of the fixture patterns.
  std::map<SyntaxType, int> all;
  int total = 0;
  for (const auto& p : f.patterns) {
    for (const auto& ex : f.typed) {
      if (!embed(p, ex)) continue;
      for (const auto& r : resolve_holes(ex, p, f.graph)) {
        if (!r.expression) continue;
        ++all[r.syntax_type];
        ++total;
      }
    }
  }
  std::ostringstream d;
  d << agree << "/" << rows << " manifest rows agree; fixture breakdown over " << total << " resolved holes:";
  for (int i = 0; i < kSyntaxTypeCount; ++i) {
    auto t = static_cast<SyntaxType>(i);
    char buf[64];
    std::snprintf(buf, sizeof buf, " %s %.1f%%", std::string(syntax_type_name(t)).c_str(),
                  total ? 100.0 * all[t] / total : 0.0);
    d << buf;
  }
  o.detail = d.str();
  return o;
}

// ---------------------------------------------------------------------------

std::string concretize(std::string text, std::mt19937_64& rng) {
  const std::vector<std::pair<std::string, std::function<std::string()>>> samples = {
      {"int", [&] { return std::to_string(rng() % 50); }},
      {"long", [&] { return std::to_string(rng() % 50) + "L"; }},
      {"short", [&] { return "(short) " + std::to_string(rng() % 50); }},
      {"double", [&] { return std::to_string(rng() % 50) + ".5"; }},
      {"boolean", [&] { return std::string(rng() % 2 ? "true" : "false"); }},
      {"char", [&] { return std::string("'x'"); }},
      {"String", [&] { return "\"s" + std::to_string(rng() % 50) + "\""; }}};
  for (const auto& [type, make] : samples) {
    const std::string slot = "\xE2\x9F\xA8" + type + "\xE2\x9F\xA9";
    for (size_t pos; (pos = text.find(slot)) != std::string::npos;) text.replace(pos, slot.size(), make());
  }
  return text;
}

// Fills every group with a random candidate (literal slots concretized) or
// a random constant.
void fill_randomly(Session& s, std::mt19937_64& rng) {
  for (size_t g = 0; g < s.groups().size(); ++g) {
    if (s.assignments()[g]) continue;
    const GroupState& gs = s.groups()[g];
    if (is_literal_type_name(gs.group.type) && rng() % 2) {
      std::string c = concretize("\xE2\x9F\xA8" + gs.group.type + "\xE2\x9F\xA9", rng);
      s.fill(gs.group.id, c);
      continue;
    }
    const size_t pool = std::min<size_t>(gs.candidates.size(), 8);
    bool done = false;
    for (int attempt = 0; attempt < 8 && !done && pool > 0; ++attempt) {
      const auto& cand = gs.candidates[rng() % pool].candidate;
      try {
        if (cand.placeholder_count == 0) {
          s.fill(gs.group.id, cand.text);
        } else {
          s.fill_expression(gs.group.id, concretize(cand.text, rng));
        }
        done = true;
      } catch (const TypeMismatch&) {
      }
    }
    if (!done) s.fill(gs.group.id, gs.candidates.front().id);
  }
}

std::vector<Param> pattern_context(const ScsPattern& p) {
  const auto& f = fixtures::poi_mini();
  for (const auto& ex : f.typed) {
    if (!embed(p, ex)) continue;
    std::vector<Param> ctx = ex.context_params;
    for (const auto& fv : ex.free_vars) ctx.push_back(fv);
    return ctx;
  }
  return {};
}

Outcome rank_promotion() {
  Outcome o;
  const auto& f = fixtures::poi_mini();
  auto fixture_engine = std::make_shared<const Engine>(f.graph, f.corpus, f.patterns);
  std::mt19937_64 rng(97);
  int patterns_used = 0;
  int too_small = 0;
  int goals_total = 0;
  int absent = 0;
  int holes = 0;
  double mrr_sum = 0;
  double max_mrr_gap = 0;
  for (const auto& p : f.patterns) {
    auto ctx = pattern_context(p);
    {
      Session probe = Session::open(fixture_engine, "probe", p.id, ctx, 1);
      if (probe.groups().empty()) continue;
    }
    // 100 examples, each the emitted code of a randomly filled session.
    std::vector<ScsExample> corpus;
    for (int k = 0; k < 100; ++k) {
      Session s = Session::open(fixture_engine, "gen", p.id, ctx, rng());
      fill_randomly(s, rng);
      std::string id = "gen-" + std::to_string(k);
      corpus.push_back(parse_example(s.emit_code(), ctx, id));
    }
    auto engine = std::make_shared<const Engine>(f.graph, corpus, std::vector<ScsPattern>{p});
    auto analysis = engine->analysis(p.id);
    if (analysis->groups.empty()) {
      o.fail(p.id + ": generated corpus leaves no hole groups");
      continue;
    }
    // Goals are examples whose group expressions no other example shares.
    std::map<std::string, int> signature_count;
    std::vector<std::string> signature(analysis->example_ids.size());
    for (size_t e = 0; e < analysis->example_ids.size(); ++e) {
      for (size_t g = 0; g < analysis->groups.size(); ++g) {
        signature[e] += to_string(group_expression(*analysis, p, e, g)) + "\x1f";
      }
      ++signature_count[signature[e]];
    }
    std::vector<std::string> goals;
    for (size_t e = 0; e < signature.size() && goals.size() < 3; ++e) {
      if (signature_count[signature[e]] == 1) goals.push_back(analysis->example_ids[e]);
    }
    // Too few distinct fill combinations to give three unique goals.
    if (goals.size() < 3) {
      ++too_small;
      continue;
    }
    ++patterns_used;
    for (const auto& goal : goals) {
      SimulationReport r = simulate(engine, p.id, goal, rng());
      ++goals_total;
      const std::string where = p.id + "/" + goal;
      for (size_t i = 1; i < r.trajectory.size(); ++i) {
        if (r.trajectory[i] > r.trajectory[i - 1]) o.fail(where + ": trajectory rises");
      }
      if (r.final_rank != 1) o.fail(where + ": final rank " + std::to_string(r.final_rank));
      if (!r.mrr) {
        o.fail(where + ": no MRR");
        continue;
      }
      double direct = oracle::mean_reciprocal_rank(r.candidate_ranks);
      max_mrr_gap = std::max(max_mrr_gap, std::abs(direct - *r.mrr));
      if (std::abs(direct - *r.mrr) > 1e-12) o.fail(where + ": MRR differs from direct computation");
      mrr_sum += *r.mrr;
      holes += static_cast<int>(r.candidate_ranks.size());
      for (const auto& c : r.candidate_ranks) absent += !c.has_value();
    }
  }
  if (patterns_used < 10) o.fail("only " + std::to_string(patterns_used) + " patterns simulated");
  std::ostringstream d;
  d << patterns_used << " patterns (" << too_small << " skipped without 3 unique goals), " << goals_total << " goals, " << holes << " groups (" << absent
    << " answers not synthesized), mean MRR " << (goals_total ? mrr_sum / goals_total : 0.0)
    << ", max |MRR - direct| " << max_mrr_gap;
  o.detail = d.str();
  return o;
}

// ---------------------------------------------------------------------------

Outcome performance() {
  Outcome o;
  const auto& f = fixtures::poi_mini();
  auto pop = PopularityModel::fit(f.typed, f.graph);
  SynthConfig cfg;  // max_depth 4, default cap
  const std::vector<std::pair<std::vector<Param>, std::string>> holes = {
      {{{"wb", "Workbook"}}, "Workbook"}, {{{"wb", "Workbook"}}, "short"},
      {{{"wb", "Workbook"}}, "FillPatternType"}, {{{"wb", "Workbook"}}, "Cell"},
      {{{"wb", "Workbook"}}, "CellStyle"}, {{{"wb", "Workbook"}, {"sheet", "Sheet"}}, "Font"}};
  std::vector<double> ms;
  for (int run = 0; run < 100; ++run) {
    const auto& [locals, target] = holes[run % holes.size()];
    auto t0 = Clock::now();
    auto cands = synthesize(locals, target, cfg, f.graph, &pop);
    ms.push_back(seconds_since(t0) * 1000.0);
    if (cands.empty()) o.fail("no candidates for " + target);
  }
  std::sort(ms.begin(), ms.end());
  double median = (ms[49] + ms[50]) / 2;
  if (median >= 800.0) o.fail("median " + std::to_string(median) + " ms");
  std::ostringstream d;
  d << f.graph.member_count() << " members, depth 4, cap " << cfg.per_type_cap << ": median " << median
    << " ms, max " << ms.back() << " ms over 100 runs";
  o.detail = d.str();
  return o;
}

// ---------------------------------------------------------------------------

Outcome replay_determinism() {
  Outcome o;
  const auto& f = fixtures::poi_mini();
  auto engine = std::make_shared<const Engine>(f.graph, f.corpus, f.patterns);
  std::mt19937_64 rng(5150);
  int sessions = 0;
  int events = 0;
  for (const auto& p : f.patterns) {
    auto ctx = pattern_context(p);
    for (int k = 0; k < 4; ++k) {
      Session s = Session::open(engine, "s-" + std::to_string(sessions), p.id, ctx, rng());
      ++sessions;
      // Random walk of fills and undos, ending fully filled.
      for (int step = 0; step < 6; ++step) {
        if (s.history_depth() > 0 && rng() % 3 == 0) {
          s.undo();
          continue;
        }
        std::vector<size_t> open;
        for (size_t g = 0; g < s.groups().size(); ++g) {
          if (!s.assignments()[g]) open.push_back(g);
        }
        if (open.empty()) break;
        const GroupState& gs = s.groups()[open[rng() % open.size()]];
        s.fill(gs.group.id, gs.candidates[rng() % std::min<size_t>(gs.candidates.size(), 6)].id);
      }
      fill_randomly(s, rng);
      std::string log;
      for (const auto& e : s.events()) log += e + "\n";
      events += static_cast<int>(s.events().size());
      Session r = Session::replay(engine, log);
      const std::string code = s.emit_code();
      if (r.emit_code() != code) o.fail(p.id + ": replayed code differs");
      if (!r.same_state(s)) o.fail(p.id + ": replayed state differs");
      try {
        ScsExample parsed = parse_example(code, ctx);
        if (!parsed.free_vars.empty()) o.fail(p.id + ": free variable " + parsed.free_vars[0].name);
        ScsExample typed = annotate_example(parsed, f.graph);
        if (!embed(p, typed)) o.fail(p.id + ": emitted code no longer contains the pattern");
      } catch (const SyntaxError& e) {
        o.fail(p.id + ": emitted code does not parse: " + e.what());
      }
    }
  }
  o.detail = std::to_string(sessions) + " sessions over " + std::to_string(f.patterns.size()) +
             " patterns, " + std::to_string(events) + " events replayed";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"miner-oracle", miner_oracle},
      {"synthesis-oracle", synthesis_oracle},
      {"clustering-oracle", clustering_oracle},
      {"classifier-fidelity", classifier_fidelity},
      {"rank-promotion", rank_promotion},
      {"performance", performance},
      {"replay-determinism", replay_determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("threw: ") + e.what());
    }
    failed += report(c.name, o);
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << (7 - failed) << "/7 criteria\n";
  return failed ? 1 : 0;
}
