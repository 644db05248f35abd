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


#ifndef PATTERNFORGE_PARSER_HPP_
#define PATTERNFORGE_PARSER_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "patternforge/scs.hpp"

namespace patternforge {

// Parses the statement list of one example. Identifiers that resolve to no
// declaration, assignment or context parameter become free variables with
// an empty type; type them with annotate_example() once a graph is at hand.
//
// Throws SyntaxError on malformed input and TypeNameError when a
// declaration's type is not a valid type name. `first_line` offsets the
// reported line numbers.
ScsExample parse_example(std::string_view body, std::vector<Param> context = {},
                         std::string id = {}, int first_line = 1);

// Parses a single expression with `scope` as the visible variables.
ExprPtr parse_expression(std::string_view text, const std::vector<Param>& scope = {});

// Parses a corpus file made of "#example <id> (<name:Type>, ...)" ... "#end"
// blocks. Blank lines and // comments between blocks are ignored.
std::vector<ScsExample> parse_corpus(std::string_view text, std::string_view source_uri = {});

// Loads every *.scs file under `dir`, in path order.
std::vector<ScsExample> load_corpus_dir(const std::filesystem::path& dir);

// Primitive keyword or an identifier starting with an upper-case letter.
bool is_valid_type_name(std::string_view name);

}  // namespace patternforge

#endif  // PATTERNFORGE_PARSER_HPP_
