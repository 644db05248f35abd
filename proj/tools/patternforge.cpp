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


// Command-line entry point: graph building, mining, analysis, synthesis,
// simulation and the local session service.

#include <CLI11.hpp>
#include <csignal>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "patternforge/api_graph.hpp"
#include "patternforge/errors.hpp"
#include "patternforge/hole_analysis.hpp"
#include "patternforge/miner.hpp"
#include "patternforge/parser.hpp"
#include "patternforge/ranker.hpp"
#include "patternforge/service.hpp"
#include "patternforge/session.hpp"
#include "patternforge/synthesizer.hpp"
#include "patternforge/typing.hpp"

namespace pf = patternforge;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw pf::Error("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
  if (!out) throw pf::Error("cannot write " + path);
}

std::vector<pf::Param> parse_locals(const std::string& spec) {
  std::vector<pf::Param> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    item = item.substr(b, item.find_last_not_of(" \t") - b + 1);
    auto colon = item.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == item.size()) {
      throw pf::PreconditionError("local '" + item + "' is not name:Type");
    }
    out.push_back({item.substr(0, colon), item.substr(colon + 1)});
  }
  return out;
}

struct EngineArgs {
  std::string model;
  std::string corpus;
  std::string patterns;
  std::string popularity;
  double fixed_threshold = 0.5;
  double coref_threshold = 0.8;
  int max_depth = 4;
  int cap = 50;
};

void add_engine_options(CLI::App* cmd, EngineArgs& a) {
  cmd->add_option("--model", a.model, "API model JSON or graph cache")->required();
  cmd->add_option("--corpus", a.corpus, "Directory of .scs files")->required();
  cmd->add_option("--patterns", a.patterns, "patterns.json (mined on the fly when absent)");
  cmd->add_option("--popularity", a.popularity, "Popularity model (fitted on the corpus when absent)");
  cmd->add_option("--fixed-threshold", a.fixed_threshold, "Freezing frequency threshold");
  cmd->add_option("--coref-threshold", a.coref_threshold, "Co-reference merge threshold");
  cmd->add_option("--max-depth", a.max_depth, "Synthesis depth bound");
  cmd->add_option("--cap", a.cap, "Per-type candidate cap, 0 disables");
}

std::shared_ptr<const pf::Engine> load_engine(const EngineArgs& a) {
  pf::ApiGraph graph = pf::ApiGraph::load(a.model);
  auto corpus = pf::load_corpus_dir(a.corpus);
  std::vector<pf::ScsPattern> patterns;
  if (!a.patterns.empty()) {
    patterns = pf::load_patterns(a.patterns, graph);
  } else {
    patterns = pf::mine(pf::annotate_corpus(corpus, graph), pf::MinerConfig{}, graph);
  }
  pf::EngineConfig cfg;
  cfg.cluster.fixed_threshold = a.fixed_threshold;
  cfg.cluster.coref_threshold = a.coref_threshold;
  cfg.synth.max_depth = a.max_depth;
  cfg.synth.per_type_cap = a.cap;
  std::optional<pf::PopularityModel> pop;
  if (!a.popularity.empty()) pop = pf::PopularityModel::from_json(read_file(a.popularity));
  return std::make_shared<const pf::Engine>(std::move(graph), std::move(corpus),
                                            std::move(patterns), cfg, std::move(pop));
}

pf::HttpService* g_service = nullptr;

void on_signal(int) {
  if (g_service) g_service->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"patternforge: API usage pattern mining and integration"};
  app.require_subcommand(1);

  // build-kg
  std::string kg_model, kg_out, kg_corpus, kg_pop;
  auto* build_kg = app.add_subcommand("build-kg", "Validate an API model and write the graph cache");
  build_kg->add_option("--model", kg_model, "API model JSON")->required();
  build_kg->add_option("--out", kg_out, "Graph cache output")->required();
  build_kg->add_option("--corpus", kg_corpus, "Corpus used to fit the popularity model");
  build_kg->add_option("--popularity", kg_pop, "Popularity model output");

  // mine
  std::string mine_corpus, mine_model, mine_out = "-", mine_review, mine_deny;
  pf::MinerConfig mine_cfg;
  bool mine_all = false;
  auto* mine = app.add_subcommand("mine", "Mine API usage patterns from a corpus");
  mine->add_option("--corpus", mine_corpus, "Directory of .scs files")->required();
  mine->add_option("--model", mine_model, "API model JSON or graph cache")->required();
  mine->add_option("--min-support", mine_cfg.min_support_fraction, "Minimum support fraction");
  mine->add_option("--min-length", mine_cfg.min_length, "Minimum number of calls");
  mine->add_flag("--all", mine_all, "Keep non-closed sequences too");
  mine->add_option("--out", mine_out, "patterns.json output");
  mine->add_option("--review", mine_review, "Also write a review file for manual vetting");
  mine->add_option("--denylist", mine_deny, "Drop pattern ids listed in this file");

  // review
  std::string review_in, review_deny;
  auto* review = app.add_subcommand("review", "Append ids rejected in a review file to a denylist");
  review->add_option("--in", review_in, "Review file")->required();
  review->add_option("--denylist", review_deny, "Denylist to append to")->required();

  // analyze
  EngineArgs an;
  std::string an_pattern, an_out = "-";
  auto* analyze = app.add_subcommand("analyze", "Resolve, freeze and group the holes of a pattern");
  add_engine_options(analyze, an);
  analyze->add_option("--pattern", an_pattern, "Pattern id")->required();
  analyze->add_option("--out", an_out, "groups.json output");

  // synth
  std::string sy_model, sy_target, sy_locals, sy_corpus, sy_pop;
  pf::SynthConfig sy_cfg;
  int sy_top = 20;
  bool sy_json = false;
  auto* synth = app.add_subcommand("synth", "Synthesize candidate expressions of a type");
  synth->add_option("--model", sy_model, "API model JSON or graph cache")->required();
  synth->add_option("--target", sy_target, "Target type")->required();
  synth->add_option("--locals", sy_locals, "Comma-separated name:Type list");
  synth->add_option("--max-depth", sy_cfg.max_depth, "Depth bound");
  synth->add_option("--cap", sy_cfg.per_type_cap, "Per-type candidate cap, 0 disables");
  synth->add_option("--corpus", sy_corpus, "Corpus used to fit popularity");
  synth->add_option("--popularity", sy_pop, "Popularity model file");
  synth->add_option("--top", sy_top, "Number of candidates to print, 0 for all");
  synth->add_flag("--json", sy_json, "Print JSON");

  // simulate
  EngineArgs si;
  std::string si_pattern, si_goal, si_report = "-";
  uint64_t si_seed = 0;
  auto* simulate = app.add_subcommand("simulate", "Replay a simulated user towards a goal example");
  add_engine_options(simulate, si);
  simulate->add_option("--pattern", si_pattern, "Pattern id")->required();
  simulate->add_option("--goal", si_goal, "Goal example id")->required();
  simulate->add_option("--seed", si_seed, "Shuffle seed");
  simulate->add_option("--report", si_report, "Report output");

  // serve
  EngineArgs sv;
  std::string sv_host = "127.0.0.1", sv_data;
  int sv_port = 8080;
  auto* serve = app.add_subcommand("serve", "Run the local HTTP/JSON session service");
  add_engine_options(serve, sv);
  serve->add_option("--port", sv_port, "Port, 0 picks a free one");
  serve->add_option("--host", sv_host, "Bind address");
  serve->add_option("--data", sv_data, "Directory for session event logs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build_kg) {
      pf::ApiGraph graph = pf::ApiGraph::from_model_file(kg_model);
      write_output(kg_out, graph.to_cache_json());
      if (!kg_pop.empty()) {
        auto corpus = kg_corpus.empty() ? std::vector<pf::ScsExample>{}
                                        : pf::annotate_corpus(pf::load_corpus_dir(kg_corpus), graph);
        write_output(kg_pop, pf::PopularityModel::fit(corpus, graph).to_json());
      }
      std::cerr << "graph " << graph.model_hash().substr(0, 12) << ": " << graph.nodes().size()
                << " nodes, " << graph.edges().size() << " edges\n";
    } else if (*mine) {
      if (mine_all) mine_cfg.closed_only = false;
      pf::ApiGraph graph = pf::ApiGraph::load(mine_model);
      auto corpus = pf::annotate_corpus(pf::load_corpus_dir(mine_corpus), graph);
      auto patterns = pf::mine(corpus, mine_cfg, graph);
      if (!mine_deny.empty()) patterns = pf::apply_denylist(patterns, pf::load_denylist(mine_deny));
      write_output(mine_out, pf::patterns_to_json(patterns));
      if (!mine_review.empty()) write_output(mine_review, pf::review_json(patterns));
      std::cerr << patterns.size() << " patterns from " << corpus.size() << " examples\n";
    } else if (*review) {
      auto rejected = pf::rejected_ids(read_file(review_in));
      std::ofstream out(review_deny, std::ios::app);
      for (const auto& id : rejected) out << id << '\n';
      if (!out) throw pf::Error("cannot write " + review_deny);
      std::cerr << rejected.size() << " rejected ids appended\n";
    } else if (*analyze) {
      auto engine = load_engine(an);
      auto analysis = engine->analysis(an_pattern);
      pf::PatternAnalysis described = *analysis;
      for (auto& g : described.groups) {
        g.description = pf::describe_group(g, engine->pattern(an_pattern), engine->graph());
      }
      write_output(an_out, pf::analysis_to_json(described, engine->pattern(an_pattern)));
    } else if (*synth) {
      pf::ApiGraph graph = pf::ApiGraph::load(sy_model);
      pf::PopularityModel pop = pf::PopularityModel::uniform(graph);
      if (!sy_pop.empty()) {
        pop = pf::PopularityModel::from_json(read_file(sy_pop));
      } else if (!sy_corpus.empty()) {
        pop = pf::PopularityModel::fit(pf::annotate_corpus(pf::load_corpus_dir(sy_corpus), graph), graph);
      }
      auto cands = pf::synthesize(parse_locals(sy_locals), sy_target, sy_cfg, graph, &pop);
      size_t n = sy_top <= 0 ? cands.size() : std::min(cands.size(), static_cast<size_t>(sy_top));
      if (sy_json) {
        json a = json::array();
        for (size_t i = 0; i < n; ++i) {
          a.push_back({{"expression", cands[i].text},
                       {"syntax_type", pf::syntax_type_name(cands[i].syntax_type)},
                       {"popularity", cands[i].popularity},
                       {"placeholders", cands[i].placeholder_count},
                       {"free_vars", cands[i].free_var_count}});
        }
        std::cout << json{{"target", sy_target}, {"total", cands.size()}, {"candidates", a}}.dump(2)
                  << '\n';
      } else {
        for (size_t i = 0; i < n; ++i) {
          std::cout << cands[i].text << "\t" << pf::syntax_type_name(cands[i].syntax_type) << "\t"
                    << cands[i].popularity << '\n';
        }
        std::cerr << cands.size() << " candidates\n";
      }
    } else if (*simulate) {
      auto engine = load_engine(si);
      write_output(si_report, pf::simulate(engine, si_pattern, si_goal, si_seed).to_json());
    } else if (*serve) {
      auto engine = load_engine(sv);
      std::optional<std::filesystem::path> data;
      if (!sv_data.empty()) data = sv_data;
      auto store = std::make_shared<pf::SessionStore>(engine, data);
      pf::HttpService service(store);
      int port = service.bind(sv_host, sv_port);
      if (port < 0) throw pf::Error("cannot bind " + sv_host + ":" + std::to_string(sv_port));
      g_service = &service;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "serving " << engine->patterns().size() << " patterns on http://" << sv_host << ":"
                << port << "\n";
      service.run();
      g_service = nullptr;
    }
  } catch (const pf::SyntaxError& e) {
    std::cerr << "syntax error: " << e.what() << '\n';
    return 2;
  } catch (const pf::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
