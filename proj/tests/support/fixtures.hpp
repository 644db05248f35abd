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


#ifndef PATTERNFORGE_TESTS_FIXTURES_HPP_
#define PATTERNFORGE_TESTS_FIXTURES_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "patternforge/api_graph.hpp"
#include "patternforge/scs.hpp"

namespace fixtures {

std::filesystem::path dir();
std::string read(const std::filesystem::path& path);

// The poi-mini fixture: model, corpus and mined patterns, loaded once.
struct PoiMini {
  patternforge::ApiGraph graph;
  std::vector<patternforge::ScsExample> corpus;  // as parsed
  std::vector<patternforge::ScsExample> typed;
  std::vector<patternforge::ScsPattern> patterns;

  const patternforge::ScsPattern& pattern_with(const std::string& description) const;
  const patternforge::ScsExample& example(const std::string& id) const;
};
const PoiMini& poi_mini();

// Calls of the cell fill pattern, in order.
inline const std::vector<std::string>& fill_pattern_tokens() {
  static const std::vector<std::string> kTokens = {
      "Workbook.createCellStyle()", "CellStyle.setFillForegroundColor(short)",
      "CellStyle.setFillPattern(FillPatternType)", "Cell.setCellStyle(CellStyle)"};
  return kTokens;
}

}  // namespace fixtures

#endif  // PATTERNFORGE_TESTS_FIXTURES_HPP_
