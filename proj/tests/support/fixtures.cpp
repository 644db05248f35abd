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


#include "fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "patternforge/miner.hpp"
#include "patternforge/parser.hpp"
#include "patternforge/typing.hpp"

namespace fixtures {

std::filesystem::path dir() { return PATTERNFORGE_FIXTURES; }

std::string read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const PoiMini& poi_mini() {
  static const PoiMini kFixture = [] {
    PoiMini f;
    f.graph = patternforge::ApiGraph::from_model_file(dir() / "poi-mini" / "model.json");
    f.corpus = patternforge::load_corpus_dir(dir() / "poi-mini" / "corpus");
    f.typed = patternforge::annotate_corpus(f.corpus, f.graph);
    f.patterns = patternforge::load_patterns(dir() / "poi-mini" / "patterns.json", f.graph);
    return f;
  }();
  return kFixture;
}

const patternforge::ScsPattern& PoiMini::pattern_with(const std::string& description) const {
  for (const auto& p : patterns) {
    if (p.description == description) return p;
  }
  throw std::runtime_error("no fixture pattern '" + description + "'");
}

const patternforge::ScsExample& PoiMini::example(const std::string& id) const {
  for (const auto& e : typed) {
    if (e.id == id) return e;
  }
  throw std::runtime_error("no fixture example '" + id + "'");
}

}  // namespace fixtures
