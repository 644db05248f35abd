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


#ifndef PATTERNFORGE_PRINTER_HPP_
#define PATTERNFORGE_PRINTER_HPP_

#include <functional>
#include <string>
#include <vector>

#include "patternforge/scs.hpp"

namespace patternforge {

// Canonical statement text: one statement per line, two-space indentation
// inside blocks, every line newline-terminated. An empty list prints "".
std::string print(const std::vector<Statement>& statements);
std::string print(const ScsExample& example);
std::string print(const Expr& expr);
// Pattern skeleton with every hole rendered as a typed placeholder.
std::string print(const ScsPattern& pattern);

// "#example <id> (<name:Type>, ...)" header, body, "#end".
std::string print_corpus_entry(const ScsExample& example);

// Rebuilds block structure from a token sequence. Control tokens open and
// close if/while/try blocks (conditions become boolean placeholders); for
// each call token `emit_call(call_index, block, top_level)` appends that
// call's statements to `block`, and may append hoisted declarations to
// `top_level`, which land before the outermost open block. Unmatched
// closers are ignored and unclosed blocks are closed at the end.
using CallEmitter =
    std::function<void(int call_index, std::vector<Statement>& block,
                       std::vector<Statement>& top_level)>;
// When `is_condition` accepts the first call after IF or WHILE, a lone
// expression statement for it becomes the block's condition instead of
// the ⟨boolean⟩ placeholder.
std::vector<Statement> build_blocks(const std::vector<std::string>& tokens,
                                    const CallEmitter& emit_call,
                                    const std::function<bool(int call_index)>& is_condition = {});

// Splits "Owner.name(T1,T2)" into its parts; constructors use "<init>".
struct MethodRefParts {
  std::string owner;
  std::string name;
  std::vector<std::string> param_types;
  bool is_constructor() const { return name == "<init>"; }
};
MethodRefParts split_method_ref(const std::string& ref);

}  // namespace patternforge

#endif  // PATTERNFORGE_PRINTER_HPP_
