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


#include "patternforge/api_graph.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"
#include "patternforge/errors.hpp"
#include "patternforge/hash.hpp"
#include "patternforge/parser.hpp"

namespace patternforge {

using json = nlohmann::json;

namespace {

constexpr int kCacheVersion = 1;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError(path.string(), "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::set<std::string> kEmptySet;

std::string join_types(const std::vector<ParamInfo>& params) {
  std::string out;
  for (size_t i = 0; i < params.size(); ++i) {
    if (i > 0) out += ",";
    out += params[i].type;
  }
  return out;
}

NodeKind node_kind_from(std::string_view s) {
  static const std::map<std::string, NodeKind, std::less<>> kMap = {
      {"Class", NodeKind::kClass},           {"Interface", NodeKind::kInterface},
      {"Method", NodeKind::kMethod},         {"EnumClass", NodeKind::kEnumClass},
      {"EnumConstant", NodeKind::kEnumConstant}, {"Field", NodeKind::kField}};
  auto it = kMap.find(s);
  if (it == kMap.end()) throw ModelError("/nodes", "unknown node kind '" + std::string(s) + "'");
  return it->second;
}

EdgeKind edge_kind_from(std::string_view s) {
  for (int k = 0; k <= static_cast<int>(EdgeKind::kFieldType); ++k) {
    if (edge_kind_name(static_cast<EdgeKind>(k)) == s) return static_cast<EdgeKind>(k);
  }
  throw ModelError("/edges", "unknown edge kind '" + std::string(s) + "'");
}

}  // namespace

const std::vector<std::string>& builtin_types() {
  static const std::vector<std::string> kBuiltins = {"String", "boolean", "char", "double",
                                                     "int",    "long",    "short"};
  return kBuiltins;
}

std::string_view node_kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::kClass: return "Class";
    case NodeKind::kInterface: return "Interface";
    case NodeKind::kMethod: return "Method";
    case NodeKind::kEnumClass: return "EnumClass";
    case NodeKind::kEnumConstant: return "EnumConstant";
    case NodeKind::kField: return "Field";
  }
  return "Class";
}

std::string_view edge_kind_name(EdgeKind k) {
  switch (k) {
    case EdgeKind::kHaveMethod: return "haveMethod";
    case EdgeKind::kReturn: return "return";
    case EdgeKind::kHaveConstant: return "haveConstant";
    case EdgeKind::kImplement: return "implement";
    case EdgeKind::kExtend: return "extend";
    case EdgeKind::kIterable: return "iterable";
    case EdgeKind::kHaveField: return "haveField";
    case EdgeKind::kFieldType: return "fieldType";
  }
  return "haveMethod";
}

std::string Node::produced_type() const {
  switch (kind) {
    case NodeKind::kMethod: return is_constructor ? owner : return_type;
    case NodeKind::kField: return field_type;
    case NodeKind::kEnumConstant: return owner;
    default: return name;
  }
}

ApiGraph::ApiGraph() {
  for (const auto& b : builtin_types()) {
    Node n;
    n.id = static_cast<int>(nodes_.size());
    n.kind = NodeKind::kClass;
    n.name = b;
    n.ref = b;
    n.builtin = true;
    nodes_.push_back(std::move(n));
  }
  index();
}

void ApiGraph::add_edge(EdgeKind kind, int from, int to) { edges_.push_back({kind, from, to}); }

ApiGraph ApiGraph::from_model_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelError("/", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ModelError("/", "model must be a JSON object");

  ApiGraph g;
  g.model_hash_ = sha256_hex(doc.dump());
  const json types = doc.value("types", json::array());
  if (!types.is_array()) throw ModelError("/types", "must be an array");

  auto str = [](const json& obj, const char* key, const std::string& path) -> std::string {
    if (!obj.contains(key)) return {};
    if (!obj[key].is_string()) throw ModelError(path + "/" + key, "must be a string");
    return obj[key].get<std::string>();
  };
  auto flag = [](const json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) return false;
    if (!obj[key].is_boolean()) throw ModelError(path + "/" + key, "must be a boolean");
    return obj[key].get<bool>();
  };

  // Pass 1: declare every type so members may reference later ones.
  std::vector<int> type_ids;
  for (size_t i = 0; i < types.size(); ++i) {
    std::string path = "/types/" + std::to_string(i);
    const json& t = types[i];
    if (!t.is_object()) throw ModelError(path, "must be an object");
    std::string name = str(t, "name", path);
    if (!is_valid_type_name(name)) throw ModelError(path + "/name", "invalid type name '" + name + "'");
    if (g.types_.count(name)) throw ModelError(path + "/name", "duplicate type '" + name + "'");
    std::string kind = str(t, "kind", path);
    Node n;
    n.id = static_cast<int>(g.nodes_.size());
    if (kind == "class") {
      n.kind = NodeKind::kClass;
    } else if (kind == "interface") {
      n.kind = NodeKind::kInterface;
    } else if (kind == "enum") {
      n.kind = NodeKind::kEnumClass;
    } else {
      throw ModelError(path + "/kind", "kind must be class, interface or enum");
    }
    n.name = name;
    n.ref = name;
    n.comment = str(t, "comment", path);
    n.is_abstract = flag(t, "abstract", path);
    g.types_[name] = n.id;
    type_ids.push_back(n.id);
    g.nodes_.push_back(std::move(n));
  }

  auto require_type = [&](const std::string& type, const std::string& path) {
    if (type.empty()) throw ModelError(path, "missing type");
    if (!g.types_.count(type)) throw ModelError(path, "dangling type reference '" + type + "'");
    return g.types_.at(type);
  };

  // Pass 2: members.
  for (size_t i = 0; i < types.size(); ++i) {
    std::string path = "/types/" + std::to_string(i);
    const json& t = types[i];
    const int owner_id = type_ids[i];
    const std::string owner = g.nodes_[owner_id].name;
    const NodeKind owner_kind = g.nodes_[owner_id].kind;
    auto add_member = [&](Node n, const std::string& mpath) {
      if (g.members_.count(n.ref)) throw ModelError(mpath, "duplicate member '" + n.ref + "'");
      n.id = static_cast<int>(g.nodes_.size());
      n.owner = owner;
      g.members_[n.ref] = n.id;
      g.nodes_.push_back(std::move(n));
      return static_cast<int>(g.nodes_.size()) - 1;
    };

    const json constants = t.value("constants", json::array());
    if (!constants.empty() && owner_kind != NodeKind::kEnumClass) {
      throw ModelError(path + "/constants", "only enums declare constants");
    }
    for (size_t c = 0; c < constants.size(); ++c) {
      std::string cpath = path + "/constants/" + std::to_string(c);
      if (!constants[c].is_string()) throw ModelError(cpath, "must be a string");
      Node n;
      n.kind = NodeKind::kEnumConstant;
      n.name = constants[c].get<std::string>();
      n.ref = owner + "." + n.name;
      n.is_static = true;
      int id = add_member(std::move(n), cpath);
      g.add_edge(EdgeKind::kHaveConstant, owner_id, id);
    }

    const json fields = t.value("fields", json::array());
    for (size_t f = 0; f < fields.size(); ++f) {
      std::string fpath = path + "/fields/" + std::to_string(f);
      const json& fj = fields[f];
      Node n;
      n.kind = NodeKind::kField;
      n.name = str(fj, "name", fpath);
      if (n.name.empty()) throw ModelError(fpath + "/name", "missing field name");
      n.field_type = str(fj, "type", fpath);
      int type_id = require_type(n.field_type, fpath + "/type");
      n.is_static = flag(fj, "static", fpath);
      n.comment = str(fj, "comment", fpath);
      n.ref = owner + "." + n.name;
      int id = add_member(std::move(n), fpath);
      g.add_edge(EdgeKind::kHaveField, owner_id, id);
      g.add_edge(EdgeKind::kFieldType, id, type_id);
    }

    const json methods = t.value("methods", json::array());
    for (size_t m = 0; m < methods.size(); ++m) {
      std::string mpath = path + "/methods/" + std::to_string(m);
      const json& mj = methods[m];
      Node n;
      n.kind = NodeKind::kMethod;
      n.is_constructor = flag(mj, "constructor", mpath);
      n.is_static = flag(mj, "static", mpath);
      n.comment = str(mj, "comment", mpath);
      n.name = str(mj, "name", mpath);
      const json params = mj.value("params", json::array());
      for (size_t p = 0; p < params.size(); ++p) {
        std::string ppath = mpath + "/params/" + std::to_string(p);
        ParamInfo info;
        info.type = str(params[p], "type", ppath);
        require_type(info.type, ppath + "/type");
        info.name = str(params[p], "name", ppath);
        if (info.name.empty()) info.name = "arg" + std::to_string(p);
        info.doc = str(params[p], "doc", ppath);
        n.params.push_back(std::move(info));
      }
      std::string returns = str(mj, "returns", mpath);
      if (returns == "void") returns.clear();
      int return_id = -1;
      if (n.is_constructor) {
        if (owner_kind == NodeKind::kInterface) {
          throw ModelError(mpath, "interface '" + owner + "' cannot be instantiated");
        }
        if (owner_kind == NodeKind::kEnumClass) {
          throw ModelError(mpath, "enum '" + owner + "' cannot be instantiated");
        }
        if (!n.name.empty() && n.name != owner) {
          throw ModelError(mpath + "/name", "constructor must be named after its class");
        }
        if (!returns.empty()) throw ModelError(mpath + "/returns", "constructors return nothing");
        if (n.is_static) throw ModelError(mpath + "/static", "constructors cannot be static");
        n.name = owner;
        n.ref = owner + ".<init>(" + join_types(n.params) + ")";
      } else {
        if (n.name.empty()) throw ModelError(mpath + "/name", "missing method name");
        if (!returns.empty()) return_id = require_type(returns, mpath + "/returns");
        n.return_type = returns;
        n.ref = owner + "." + n.name + "(" + join_types(n.params) + ")";
      }
      int id = add_member(std::move(n), mpath);
      g.add_edge(EdgeKind::kHaveMethod, owner_id, id);
      if (return_id >= 0) g.add_edge(EdgeKind::kReturn, id, return_id);
    }
  }

  // Pass 3: type relations.
  for (size_t i = 0; i < types.size(); ++i) {
    std::string path = "/types/" + std::to_string(i);
    const json& t = types[i];
    const int id = type_ids[i];
    const NodeKind kind = g.nodes_[id].kind;
    auto names = [&](const char* key) {
      std::vector<std::string> out;
      if (!t.contains(key)) return out;
      const json& v = t[key];
      if (v.is_string()) {
        out.push_back(v.get<std::string>());
      } else if (v.is_array()) {
        for (const auto& x : v) {
          if (!x.is_string()) throw ModelError(path + "/" + key, "must contain strings");
          out.push_back(x.get<std::string>());
        }
      } else {
        throw ModelError(path + "/" + key, "must be a string or an array of strings");
      }
      return out;
    };
    auto ext = names("extends");
    for (size_t k = 0; k < ext.size(); ++k) {
      std::string epath = path + "/extends/" + std::to_string(k);
      int target = require_type(ext[k], epath);
      NodeKind tk = g.nodes_[target].kind;
      if (kind == NodeKind::kInterface && tk != NodeKind::kInterface) {
        throw ModelError(epath, "an interface can only extend interfaces");
      }
      if (kind == NodeKind::kClass && tk != NodeKind::kClass) {
        throw ModelError(epath, "a class can only extend classes");
      }
      if (kind == NodeKind::kEnumClass) throw ModelError(epath, "enums cannot extend");
      if (g.nodes_[target].builtin) throw ModelError(epath, "cannot extend a built-in type");
      g.add_edge(EdgeKind::kExtend, id, target);
    }
    auto impl = names("implements");
    for (size_t k = 0; k < impl.size(); ++k) {
      std::string ipath = path + "/implements/" + std::to_string(k);
      int target = require_type(impl[k], ipath);
      if (g.nodes_[target].kind != NodeKind::kInterface) {
        throw ModelError(ipath, "'" + impl[k] + "' is not an interface");
      }
      g.add_edge(EdgeKind::kImplement, id, target);
    }
    auto iter = names("iterable");
    if (iter.size() > 1) throw ModelError(path + "/iterable", "at most one element type");
    for (const auto& elem : iter) {
      g.add_edge(EdgeKind::kIterable, id, require_type(elem, path + "/iterable"));
    }
  }

  // Inheritance must be acyclic.
  std::vector<int> color(g.nodes_.size(), 0);
  std::function<void(int)> dfs = [&](int v) {
    color[v] = 1;
    for (const auto& e : g.edges_) {
      if (e.from != v || (e.kind != EdgeKind::kExtend && e.kind != EdgeKind::kImplement)) continue;
      if (color[e.to] == 1) {
        throw ModelError("/types", "inheritance cycle through '" + g.nodes_[e.to].name + "'");
      }
      if (color[e.to] == 0) dfs(e.to);
    }
    color[v] = 2;
  };
  for (int id : type_ids) {
    if (color[id] == 0) dfs(id);
  }

  g.index();
  return g;
}

ApiGraph ApiGraph::from_model_file(const std::filesystem::path& path) {
  return from_model_json(read_file(path));
}

ApiGraph ApiGraph::load(const std::filesystem::path& path) {
  std::string text = read_file(path);
  if (text.find("\"patternforge-kg\"") != std::string::npos) {
    try {
      return from_cache_json(text);
    } catch (const ModelError&) {
      // Not a cache after all; fall through to the model reader.
    }
  }
  return from_model_json(text);
}

std::string ApiGraph::to_cache_json() const {
  json out;
  out["format"] = "patternforge-kg";
  out["version"] = kCacheVersion;
  out["model_hash"] = model_hash_;
  json nodes = json::array();
  for (const auto& n : nodes_) {
    json j;
    j["id"] = n.id;
    j["kind"] = node_kind_name(n.kind);
    j["name"] = n.name;
    j["ref"] = n.ref;
    if (!n.owner.empty()) j["owner"] = n.owner;
    if (!n.comment.empty()) j["comment"] = n.comment;
    if (n.builtin) j["builtin"] = true;
    if (n.is_abstract) j["abstract"] = true;
    if (n.kind == NodeKind::kMethod) {
      json params = json::array();
      for (const auto& p : n.params) params.push_back({{"name", p.name}, {"type", p.type}, {"doc", p.doc}});
      j["params"] = params;
      j["static"] = n.is_static;
      j["constructor"] = n.is_constructor;
      if (!n.return_type.empty()) j["returns"] = n.return_type;
    }
    if (n.kind == NodeKind::kField) {
      j["type"] = n.field_type;
      j["static"] = n.is_static;
    }
    nodes.push_back(std::move(j));
  }
  out["nodes"] = std::move(nodes);
  json edges = json::array();
  for (const auto& e : edges_) edges.push_back({{"kind", edge_kind_name(e.kind)}, {"from", e.from}, {"to", e.to}});
  out["edges"] = std::move(edges);
  return out.dump(1) + "\n";
}

ApiGraph ApiGraph::from_cache_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelError("/", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || doc.value("format", "") != "patternforge-kg") {
    throw ModelError("/format", "not a graph cache");
  }
  if (doc.value("version", 0) != kCacheVersion) throw ModelError("/version", "unsupported cache version");
  ApiGraph g;
  g.nodes_.clear();
  g.edges_.clear();
  g.model_hash_ = doc.value("model_hash", "");
  try {
    for (const auto& j : doc.at("nodes")) {
      Node n;
      n.id = j.at("id").get<int>();
      if (n.id != static_cast<int>(g.nodes_.size())) throw ModelError("/nodes", "ids must be dense");
      n.kind = node_kind_from(j.at("kind").get<std::string>());
      n.name = j.at("name").get<std::string>();
      n.ref = j.at("ref").get<std::string>();
      n.owner = j.value("owner", "");
      n.comment = j.value("comment", "");
      n.builtin = j.value("builtin", false);
      n.is_abstract = j.value("abstract", false);
      n.is_static = j.value("static", false);
      n.is_constructor = j.value("constructor", false);
      n.return_type = j.value("returns", "");
      if (n.kind == NodeKind::kField) n.field_type = j.value("type", "");
      for (const auto& p : j.value("params", json::array())) {
        n.params.push_back({p.value("name", ""), p.value("type", ""), p.value("doc", "")});
      }
      if (n.is_type()) {
        g.types_[n.name] = n.id;
      } else {
        g.members_[n.ref] = n.id;
      }
      g.nodes_.push_back(std::move(n));
    }
    for (const auto& e : doc.at("edges")) {
      g.edges_.push_back({edge_kind_from(e.at("kind").get<std::string>()), e.at("from").get<int>(),
                          e.at("to").get<int>()});
    }
  } catch (const json::exception& e) {
    throw ModelError("/", std::string("malformed cache: ") + e.what());
  }
  g.index();
  return g;
}

void ApiGraph::index() {
  types_.clear();
  members_.clear();
  members_of_.clear();
  supers_.clear();
  subs_.clear();
  by_produced_type_.clear();
  iterable_.clear();
  for (const auto& n : nodes_) {
    if (n.is_type()) {
      types_[n.name] = n.id;
    } else {
      members_[n.ref] = n.id;
      members_of_[n.owner].push_back(n.id);
      std::string produced = n.produced_type();
      if (!produced.empty()) by_produced_type_[produced].push_back(n.id);
    }
  }
  std::map<int, std::vector<int>> up;
  for (const auto& e : edges_) {
    if (e.kind == EdgeKind::kExtend || e.kind == EdgeKind::kImplement) up[e.from].push_back(e.to);
    if (e.kind == EdgeKind::kIterable) iterable_[nodes_[e.from].name] = nodes_[e.to].name;
  }
  for (const auto& [name, id] : types_) {
    std::set<std::string>& closure = supers_[name];
    std::vector<int> stack = {id};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (!closure.insert(nodes_[v].name).second) continue;
      for (int w : up[v]) stack.push_back(w);
    }
    for (const auto& s : closure) subs_[s].insert(name);
  }
}

size_t ApiGraph::member_count() const { return members_.size(); }

bool ApiGraph::has_type(std::string_view name) const { return types_.count(name) > 0; }

const Node* ApiGraph::type_node(std::string_view name) const {
  auto it = types_.find(name);
  return it == types_.end() ? nullptr : &nodes_[it->second];
}

const Node* ApiGraph::member(std::string_view ref) const {
  auto it = members_.find(ref);
  return it == members_.end() ? nullptr : &nodes_[it->second];
}

std::vector<std::string> ApiGraph::type_names() const {
  std::vector<std::string> out;
  for (const auto& [name, id] : types_) out.push_back(name);
  return out;
}

bool ApiGraph::is_enum(std::string_view type) const {
  const Node* n = type_node(type);
  return n && n->kind == NodeKind::kEnumClass;
}

bool ApiGraph::is_interface(std::string_view type) const {
  const Node* n = type_node(type);
  return n && n->kind == NodeKind::kInterface;
}

bool ApiGraph::is_assignable(std::string_view from, std::string_view to) const {
  auto f = supers_.find(from);
  if (f == supers_.end()) throw UnknownType(std::string(from));
  if (!types_.count(to)) throw UnknownType(std::string(to));
  return f->second.count(std::string(to)) > 0;
}

bool ApiGraph::accepts(std::string_view slot, std::string_view value_type) const {
  if (value_type.empty() || value_type == "unknown" || slot.empty() || slot == "unknown") return true;
  if (value_type == "null") {
    return slot == "String" || !is_literal_type_name(slot);
  }
  if (!has_type(slot) || !has_type(value_type)) return slot == value_type;
  return is_assignable(value_type, slot);
}

const std::set<std::string>& ApiGraph::supertypes(std::string_view type) const {
  auto it = supers_.find(type);
  return it == supers_.end() ? kEmptySet : it->second;
}

const std::set<std::string>& ApiGraph::subtypes(std::string_view type) const {
  auto it = subs_.find(type);
  return it == subs_.end() ? kEmptySet : it->second;
}

Creator ApiGraph::creator_from(const Node& n) const {
  Creator c;
  c.node = n.id;
  c.owner = n.owner;
  c.member = n.name;
  c.ref = n.ref;
  c.produced_type = n.produced_type();
  c.is_static = n.is_static;
  switch (n.kind) {
    case NodeKind::kMethod:
      c.kind = n.is_constructor ? CreatorKind::kConstructor : CreatorKind::kMethod;
      break;
    case NodeKind::kField:
      c.kind = CreatorKind::kField;
      break;
    default:
      c.kind = CreatorKind::kEnumConstant;
      break;
  }
  return c;
}

std::vector<Creator> ApiGraph::creators_of(std::string_view type) const {
  if (!has_type(type)) throw UnknownType(std::string(type));
  std::vector<Creator> out;
  for (const auto& sub : subtypes(type)) {
    auto it = by_produced_type_.find(sub);
    if (it == by_produced_type_.end()) continue;
    for (int id : it->second) {
      const Node& n = nodes_[id];
      if (n.kind == NodeKind::kEnumConstant && n.owner != type) continue;
      if (n.kind == NodeKind::kMethod && n.is_constructor) {
        const Node* owner = type_node(n.owner);
        if (!owner || owner->is_abstract || owner->kind != NodeKind::kClass) continue;
      }
      out.push_back(creator_from(n));
    }
  }
  std::sort(out.begin(), out.end(), [](const Creator& a, const Creator& b) {
    return std::tie(a.kind, a.owner, a.member, a.ref) < std::tie(b.kind, b.owner, b.member, b.ref);
  });
  return out;
}

std::vector<Creator> ApiGraph::exact_creators_of(std::string_view type) const {
  std::vector<Creator> out;
  for (const auto& c : creators_of(type)) {
    if (c.produced_type == type) out.push_back(c);
  }
  return out;
}

std::vector<const Node*> ApiGraph::find_methods(std::string_view owner, std::string_view name) const {
  std::vector<const Node*> own;
  std::vector<const Node*> inherited;
  for (const auto& super : supertypes(owner)) {
    auto it = members_of_.find(super);
    if (it == members_of_.end()) continue;
    for (int id : it->second) {
      const Node& n = nodes_[id];
      if (n.kind != NodeKind::kMethod || n.is_constructor || n.name != name) continue;
      (super == owner ? own : inherited).push_back(&n);
    }
  }
  own.insert(own.end(), inherited.begin(), inherited.end());
  return own;
}

const Node* ApiGraph::resolve_call(std::string_view owner, std::string_view name,
                                   const std::vector<std::string>& arg_types) const {
  auto cands = name == "<init>" ? constructors_of(owner) : find_methods(owner, name);
  for (const Node* m : cands) {
    if (m->params.size() != arg_types.size()) continue;
    bool fit = true;
    for (size_t i = 0; i < arg_types.size() && fit; ++i) fit = accepts(m->params[i].type, arg_types[i]);
    if (fit) return m;
  }
  return nullptr;
}

std::vector<const Node*> ApiGraph::constructors_of(std::string_view type) const {
  std::vector<const Node*> out;
  auto it = members_of_.find(type);
  if (it == members_of_.end()) return out;
  for (int id : it->second) {
    if (nodes_[id].kind == NodeKind::kMethod && nodes_[id].is_constructor) out.push_back(&nodes_[id]);
  }
  return out;
}

std::vector<const Node*> ApiGraph::methods_named(std::string_view name) const {
  std::vector<const Node*> out;
  for (const auto& n : nodes_) {
    if (n.kind == NodeKind::kMethod && !n.is_constructor && n.name == name) out.push_back(&n);
  }
  return out;
}

const Node* ApiGraph::find_field(std::string_view owner, std::string_view name) const {
  for (const auto& super : supertypes(owner)) {
    auto it = members_.find(super + "." + std::string(name));
    if (it != members_.end() && nodes_[it->second].kind == NodeKind::kField) return &nodes_[it->second];
  }
  return nullptr;
}

std::vector<const Node*> ApiGraph::fields_named(std::string_view name) const {
  std::vector<const Node*> out;
  for (const auto& n : nodes_) {
    if (n.kind == NodeKind::kField && n.name == name) out.push_back(&n);
  }
  return out;
}

const Node* ApiGraph::enum_constant(std::string_view enum_type, std::string_view name) const {
  const Node* n = member(std::string(enum_type) + "." + std::string(name));
  return n && n->kind == NodeKind::kEnumConstant ? n : nullptr;
}

std::vector<const Node*> ApiGraph::enum_constants(std::string_view enum_type) const {
  std::vector<const Node*> out;
  auto it = members_of_.find(enum_type);
  if (it == members_of_.end()) return out;
  for (int id : it->second) {
    if (nodes_[id].kind == NodeKind::kEnumConstant) out.push_back(&nodes_[id]);
  }
  return out;
}

std::string ApiGraph::iterable_element(std::string_view type) const {
  auto it = iterable_.find(type);
  return it == iterable_.end() ? std::string() : it->second;
}

}  // namespace patternforge
