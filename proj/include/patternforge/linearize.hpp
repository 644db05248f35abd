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


#ifndef PATTERNFORGE_LINEARIZE_HPP_
#define PATTERNFORGE_LINEARIZE_HPP_

#include <string>
#include <vector>

#include "patternforge/scs.hpp"

namespace patternforge {

// Flattens an example into call and control tokens. Calls appear in
// evaluation order: receiver, then arguments left to right, then the call
// itself. Blocks contribute IF ... END-IF, WHILE ... END-WHILE and
// TRY ... CATCH(T) ... END-TRY; a condition's calls follow its IF/WHILE.
std::vector<SeqToken> linearize(const ScsExample& example);

std::vector<std::string> token_texts(const std::vector<SeqToken>& tokens);

// The member reference of a typed call, or "Owner.name" / "?.name" /
// "Type.<init>" when the call could not be resolved.
std::string call_token_text(const Expr& call);

}  // namespace patternforge

#endif  // PATTERNFORGE_LINEARIZE_HPP_
