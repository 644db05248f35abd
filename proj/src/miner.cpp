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


#include "patternforge/miner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "patternforge/errors.hpp"
#include "patternforge/hash.hpp"
#include "patternforge/linearize.hpp"
#include "patternforge/printer.hpp"

namespace patternforge {

using json = nlohmann::json;

namespace {

using Seq = std::vector<int>;

class PrefixSpan {
 public:
  PrefixSpan(const std::vector<Seq>& db, size_t alphabet, int threshold)
      : db_(db), alphabet_(alphabet), threshold_(threshold) {}

  std::vector<std::pair<Seq, int>> run() {
    std::vector<std::pair<int, int>> proj;
    for (size_t i = 0; i < db_.size(); ++i) proj.emplace_back(static_cast<int>(i), 0);
    Seq prefix;
    grow(prefix, proj);
    return std::move(out_);
  }

 private:
  void grow(Seq& prefix, const std::vector<std::pair<int, int>>& proj) {
    std::vector<int> count(alphabet_, 0);
    std::vector<int> seen(alphabet_, -1);
    for (const auto& [s, pos] : proj) {
      const Seq& seq = db_[s];
      for (size_t i = static_cast<size_t>(pos); i < seq.size(); ++i) {
        if (seen[seq[i]] != s) {
          seen[seq[i]] = s;
          ++count[seq[i]];
        }
      }
    }
    for (size_t item = 0; item < alphabet_; ++item) {
      if (count[item] < threshold_) continue;
      std::vector<std::pair<int, int>> next;
      for (const auto& [s, pos] : proj) {
        const Seq& seq = db_[s];
        for (size_t i = static_cast<size_t>(pos); i < seq.size(); ++i) {
          if (seq[i] == static_cast<int>(item)) {
            next.emplace_back(s, static_cast<int>(i) + 1);
            break;
          }
        }
      }
      prefix.push_back(static_cast<int>(item));
      out_.emplace_back(prefix, count[item]);
      grow(prefix, next);
      prefix.pop_back();
    }
  }

  const std::vector<Seq>& db_;
  size_t alphabet_;
  int threshold_;
  std::vector<std::pair<Seq, int>> out_;
};

bool is_subsequence(const Seq& small, const Seq& big) {
  size_t j = 0;
  for (size_t i = 0; i < big.size() && j < small.size(); ++i) {
    if (big[i] == small[j]) ++j;
  }
  return j == small.size();
}

int call_count(const std::vector<std::string>& tokens) {
  return static_cast<int>(std::count_if(tokens.begin(), tokens.end(),
                                        [](const std::string& t) { return is_call_token(t); }));
}

std::string describe(const std::vector<CallTemplate>& calls) {
  std::string out;
  for (const auto& c : calls) {
    MethodRefParts parts = split_method_ref(c.method_ref);
    if (!out.empty()) out += ", ";
    out += parts.owner + "." + (parts.is_constructor() ? "new" : parts.name);
  }
  return out;
}

HoleRole role_from(const std::string& s) {
  if (s == "receiver") return HoleRole::kReceiver;
  if (s == "param") return HoleRole::kParam;
  throw PreconditionError("unknown hole role '" + s + "'");
}

ControlContext context_from(const std::string& s) {
  if (s == "if") return ControlContext::kIf;
  if (s == "while") return ControlContext::kWhile;
  if (s == "try") return ControlContext::kTry;
  return ControlContext::kPlain;
}

}  // namespace

void MinerConfig::validate() const {
  if (!(min_support_fraction > 0.0 && min_support_fraction <= 1.0)) {
    throw PreconditionError("min_support_fraction must lie in (0, 1]");
  }
  if (min_length < 1) throw PreconditionError("min_length must be at least 1");
}

int support_threshold(double fraction, size_t corpus_size) {
  int t = static_cast<int>(std::ceil(fraction * static_cast<double>(corpus_size) - 1e-9));
  return std::max(t, 1);
}

std::vector<MinedSequence> mine_sequences(const std::vector<std::vector<std::string>>& db,
                                          const MinerConfig& cfg) {
  cfg.validate();
  // Ids follow lexicographic token order so id order doubles as tie-break.
  std::map<std::string, int> ids;
  for (const auto& seq : db) {
    for (const auto& t : seq) ids.emplace(t, 0);
  }
  std::vector<std::string> names;
  for (auto& [name, id] : ids) {
    id = static_cast<int>(names.size());
    names.push_back(name);
  }
  std::vector<Seq> encoded;
  encoded.reserve(db.size());
  for (const auto& seq : db) {
    Seq s;
    for (const auto& t : seq) s.push_back(ids[t]);
    encoded.push_back(std::move(s));
  }
  auto frequent = PrefixSpan(encoded, names.size(), support_threshold(cfg.min_support_fraction, db.size())).run();

  std::map<std::pair<size_t, int>, std::vector<size_t>> by_len_support;
  for (size_t i = 0; i < frequent.size(); ++i) {
    by_len_support[{frequent[i].first.size(), frequent[i].second}].push_back(i);
  }
  std::vector<MinedSequence> out;
  for (const auto& [seq, support] : frequent) {
    if (cfg.closed_only) {
      auto it = by_len_support.find({seq.size() + 1, support});
      if (it != by_len_support.end() &&
          std::any_of(it->second.begin(), it->second.end(),
                      [&](size_t j) { return is_subsequence(seq, frequent[j].first); })) {
        continue;
      }
    }
    MinedSequence m;
    for (int id : seq) m.tokens.push_back(names[id]);
    m.support = support;
    if (call_count(m.tokens) < cfg.min_length) continue;
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(), [](const MinedSequence& a, const MinedSequence& b) {
    if (a.support != b.support) return a.support > b.support;
    if (a.tokens.size() != b.tokens.size()) return a.tokens.size() > b.tokens.size();
    return a.tokens < b.tokens;
  });
  return out;
}

std::vector<ScsPattern> mine(const std::vector<ScsExample>& corpus, const MinerConfig& cfg,
                             const ApiGraph& graph) {
  if (corpus.empty()) throw PreconditionError("cannot mine an empty corpus");
  std::vector<std::vector<std::string>> db;
  db.reserve(corpus.size());
  for (const auto& ex : corpus) db.push_back(token_texts(linearize(ex)));
  std::vector<ScsPattern> out;
  for (const auto& seq : mine_sequences(db, cfg)) {
    out.push_back(make_pattern(seq.tokens, seq.support, graph));
  }
  return out;
}

std::string pattern_id(const std::vector<std::string>& tokens) {
  std::string joined;
  for (const auto& t : tokens) {
    joined += t;
    joined += '\n';
  }
  return "p-" + sha256_hex(joined).substr(0, 10);
}

ScsPattern make_pattern(const std::vector<std::string>& tokens, int support,
                        const ApiGraph& graph) {
  ScsPattern p;
  p.id = pattern_id(tokens);
  p.tokens = tokens;
  p.support = support;
  std::vector<ControlContext> stack;
  for (size_t i = 0; i < tokens.size(); ++i) {
    switch (token_kind(tokens[i])) {
      case TokenKind::kCall: {
        CallTemplate c;
        c.method_ref = tokens[i];
        c.context = stack.empty() ? ControlContext::kPlain : stack.back();
        c.token_index = static_cast<int>(i);
        p.calls.push_back(std::move(c));
        break;
      }
      case TokenKind::kIf: stack.push_back(ControlContext::kIf); break;
      case TokenKind::kWhile: stack.push_back(ControlContext::kWhile); break;
      case TokenKind::kTry: stack.push_back(ControlContext::kTry); break;
      case TokenKind::kCatch: break;
      case TokenKind::kEndIf:
      case TokenKind::kEndWhile:
      case TokenKind::kEndTry:
        if (!stack.empty()) stack.pop_back();
        break;
    }
  }
  p.holes = extract_holes(p.calls, graph);
  p.description = describe(p.calls);
  return p;
}

std::vector<Hole> extract_holes(std::vector<CallTemplate>& calls, const ApiGraph& graph) {
  std::vector<Hole> holes;
  auto next_id = [&] { return "hole-" + std::to_string(holes.size()); };
  for (size_t ci = 0; ci < calls.size(); ++ci) {
    CallTemplate& c = calls[ci];
    const Node* m = graph.member(c.method_ref);
    if (!m || m->kind != NodeKind::kMethod) throw UnknownMethodToken(c.method_ref);
    c.receiver_hole.reset();
    c.arg_holes.clear();
    if (!m->is_static && !m->is_constructor) {
      Hole h{next_id(), static_cast<int>(ci), HoleRole::kReceiver, -1, m->owner};
      c.receiver_hole = h.id;
      holes.push_back(std::move(h));
    }
    for (size_t k = 0; k < m->params.size(); ++k) {
      Hole h{next_id(), static_cast<int>(ci), HoleRole::kParam, static_cast<int>(k), m->params[k].type};
      c.arg_holes.push_back(h.id);
      holes.push_back(std::move(h));
    }
  }
  return holes;
}

std::string patterns_to_json(const std::vector<ScsPattern>& patterns) {
  json arr = json::array();
  for (const auto& p : patterns) {
    json calls = json::array();
    for (const auto& c : p.calls) {
      calls.push_back({{"method", c.method_ref},
                       {"receiver", c.receiver_hole ? json(*c.receiver_hole) : json(nullptr)},
                       {"args", c.arg_holes},
                       {"context", control_context_name(c.context)},
                       {"token_index", c.token_index}});
    }
    json holes = json::array();
    for (const auto& h : p.holes) {
      json j = {{"id", h.id},
                {"call", h.call_index},
                {"role", h.role == HoleRole::kReceiver ? "receiver" : "param"},
                {"type", h.declared_type}};
      if (h.role == HoleRole::kParam) j["param_index"] = h.param_index;
      holes.push_back(std::move(j));
    }
    arr.push_back({{"id", p.id},
                   {"tokens", p.tokens},
                   {"support", p.support},
                   {"description", p.description},
                   {"calls", calls},
                   {"holes", holes}});
  }
  json doc = {{"format", "patternforge-patterns"}, {"version", 1}, {"patterns", arr}};
  return doc.dump(1) + "\n";
}

std::vector<ScsPattern> patterns_from_json(std::string_view text, const ApiGraph& graph) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw PreconditionError(std::string("invalid patterns JSON: ") + e.what());
  }
  const json& arr = doc.is_array() ? doc : doc.at("patterns");
  std::vector<ScsPattern> out;
  std::set<std::string> seen;
  try {
    for (const auto& j : arr) {
      auto tokens = j.at("tokens").get<std::vector<std::string>>();
      ScsPattern p;
      if (!j.contains("calls")) {
        p = make_pattern(tokens, j.value("support", 0), graph);
      } else {
        p.tokens = tokens;
        p.support = j.value("support", 0);
        for (const auto& c : j.at("calls")) {
          CallTemplate t;
          t.method_ref = c.at("method").get<std::string>();
          if (!graph.member(t.method_ref)) throw UnknownMethodToken(t.method_ref);
          if (c.contains("receiver") && c["receiver"].is_string()) {
            t.receiver_hole = c["receiver"].get<std::string>();
          }
          t.arg_holes = c.value("args", std::vector<std::string>{});
          t.context = context_from(c.value("context", "plain"));
          t.token_index = c.value("token_index", 0);
          p.calls.push_back(std::move(t));
        }
        for (const auto& h : j.at("holes")) {
          Hole hole;
          hole.id = h.at("id").get<std::string>();
          hole.call_index = h.at("call").get<int>();
          hole.role = role_from(h.at("role").get<std::string>());
          hole.param_index = h.value("param_index", -1);
          hole.declared_type = h.at("type").get<std::string>();
          if (hole.declared_type.empty() || !graph.has_type(hole.declared_type)) {
            throw UnknownType(hole.declared_type);
          }
          p.holes.push_back(std::move(hole));
        }
        p.description = describe(p.calls);
      }
      p.id = j.value("id", p.id.empty() ? pattern_id(tokens) : p.id);
      if (j.contains("description")) p.description = j["description"].get<std::string>();
      if (!seen.insert(p.id).second) throw PreconditionError("duplicate pattern id '" + p.id + "'");
      out.push_back(std::move(p));
    }
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("malformed patterns JSON: ") + e.what());
  }
  return out;
}

std::vector<ScsPattern> load_patterns(const std::filesystem::path& path, const ApiGraph& graph) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return patterns_from_json(ss.str(), graph);
}

std::string review_json(const std::vector<ScsPattern>& patterns) {
  json arr = json::array();
  for (const auto& p : patterns) {
    arr.push_back({{"id", p.id},
                   {"support", p.support},
                   {"description", p.description},
                   {"code", print(p)},
                   {"decision", "pending"}});
  }
  return json({{"format", "patternforge-review"}, {"patterns", arr}}).dump(1) + "\n";
}

std::set<std::string> rejected_ids(std::string_view review_text) {
  std::set<std::string> out;
  json doc = json::parse(review_text);
  for (const auto& j : doc.at("patterns")) {
    if (j.value("decision", "") == "reject") out.insert(j.at("id").get<std::string>());
  }
  return out;
}

std::set<std::string> load_denylist(const std::filesystem::path& path) {
  std::set<std::string> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_last_not_of(" \t\r");
    out.insert(line.substr(b, e - b + 1));
  }
  return out;
}

std::vector<ScsPattern> apply_denylist(std::vector<ScsPattern> patterns,
                                       const std::set<std::string>& denied) {
  std::erase_if(patterns, [&](const ScsPattern& p) { return denied.count(p.id) > 0; });
  return patterns;
}

}  // namespace patternforge
