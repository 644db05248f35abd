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


#include "patternforge/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "patternforge/errors.hpp"

namespace patternforge {

namespace {

constexpr std::string_view kOpen = "\xE2\x9F\xA8";
constexpr std::string_view kClose = "\xE2\x9F\xA9";

const std::set<std::string, std::less<>> kPrimitives = {
    "int", "long", "short", "double", "boolean", "char", "float", "byte"};

const std::set<std::string, std::less<>> kKeywords = {
    "if", "else", "while", "for", "do", "try", "catch", "finally", "new",
    "null", "true", "false", "return", "this", "super", "throw", "switch"};

enum class Tok { kIdent, kInt, kLong, kDouble, kString, kChar, kPunct, kPlaceholder, kEof };

struct Token {
  Tok kind = Tok::kEof;
  std::string text;
  int line = 1;
  int col = 1;
};

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

class Lexer {
 public:
  Lexer(std::string_view src, int first_line) : src_(src), line_(first_line) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.line = line_;
      t.col = col_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (src_.substr(pos_).starts_with(kOpen)) {
        advance(kOpen.size());
        size_t end = src_.find(kClose, pos_);
        if (end == std::string_view::npos) fail(t, "unterminated placeholder");
        t.kind = Tok::kPlaceholder;
        t.text = std::string(src_.substr(pos_, end - pos_));
        advance(end - pos_ + kClose.size());
        if (!is_valid_type_name(t.text)) fail(t, "placeholder needs a type name");
      } else if (is_ident_start(c)) {
        size_t start = pos_;
        while (pos_ < src_.size() && is_ident_char(src_[pos_])) advance(1);
        t.kind = Tok::kIdent;
        t.text = std::string(src_.substr(start, pos_ - start));
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '-' && pos_ + 1 < src_.size() &&
                  std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
        lex_number(t);
      } else if (c == '"') {
        lex_quoted(t, '"', Tok::kString);
      } else if (c == '\'') {
        lex_quoted(t, '\'', Tok::kChar);
      } else if (std::string_view("(){};,.=:").find(c) != std::string_view::npos) {
        t.kind = Tok::kPunct;
        t.text = std::string(1, c);
        advance(1);
      } else {
        fail(t, std::string("unexpected character '") + c + "'");
      }
      out.push_back(std::move(t));
    }
  }

 private:
  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw SyntaxError(t.line, t.col, msg);
  }

  void advance(size_t n) {
    for (size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else if ((static_cast<unsigned char>(src_[pos_]) & 0xC0) != 0x80) {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance(1);
      } else {
        return;
      }
    }
  }

  void lex_number(Token& t) {
    size_t start = pos_;
    if (src_[pos_] == '-') advance(1);
    auto digits = [&] {
      size_t s = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance(1);
      return pos_ > s;
    };
    digits();
    bool is_double = false;
    if (pos_ + 1 < src_.size() && src_[pos_] == '.' &&
        std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
      is_double = true;
      advance(1);
      digits();
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        advance(1);
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance(1);
        if (!digits()) fail(t, "malformed exponent");
      }
    }
    std::string text(src_.substr(start, pos_ - start));
    t.kind = is_double ? Tok::kDouble : Tok::kInt;
    if (pos_ < src_.size()) {
      char s = src_[pos_];
      if ((s == 'L' || s == 'l') && !is_double) {
        advance(1);
        t.kind = Tok::kLong;
        text += 'L';
      } else if (s == 'd' || s == 'D') {
        advance(1);
        if (!is_double) text += ".0";
        t.kind = Tok::kDouble;
      }
    }
    if (pos_ < src_.size() && is_ident_char(src_[pos_])) fail(t, "malformed number literal");
    t.text = std::move(text);
  }

  void lex_quoted(Token& t, char quote, Tok kind) {
    size_t start = pos_;
    advance(1);
    while (pos_ < src_.size() && src_[pos_] != quote) {
      if (src_[pos_] == '\n') fail(t, "unterminated literal");
      if (src_[pos_] == '\\') advance(1);
      advance(1);
    }
    if (pos_ >= src_.size()) fail(t, "unterminated literal");
    advance(1);
    t.kind = kind;
    t.text = std::string(src_.substr(start, pos_ - start));
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_;
  int col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, const std::vector<Param>& context) : toks_(std::move(toks)) {
    for (const auto& p : context) params_[p.name] = p.type;
    scopes_.emplace_back();
  }

  std::vector<Statement> parse_statements() {
    std::vector<Statement> out;
    while (peek().kind != Tok::kEof) {
      if (is_punct("}")) fail(peek(), "unbalanced braces: unexpected '}'");
      out.push_back(parse_statement());
    }
    return out;
  }

  ExprPtr parse_single_expression() {
    ExprPtr e = parse_expr();
    if (peek().kind != Tok::kEof) fail(peek(), "unexpected trailing input");
    return e;
  }

  std::vector<Param> free_vars() const {
    std::vector<Param> out;
    for (const auto& name : free_refs_) {
      if (!def_names_.count(name)) out.push_back({name, ""});
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw SyntaxError(t.line, t.col, msg);
  }

  const Token& peek(size_t ahead = 0) const {
    size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool is_punct(std::string_view p, size_t ahead = 0) const {
    return peek(ahead).kind == Tok::kPunct && peek(ahead).text == p;
  }
  bool is_word(std::string_view w, size_t ahead = 0) const {
    return peek(ahead).kind == Tok::kIdent && peek(ahead).text == w;
  }
  void expect(std::string_view p) {
    if (!is_punct(p)) fail(peek(), "expected '" + std::string(p) + "'");
    next();
  }
  std::string expect_ident(const char* what) {
    if (peek().kind != Tok::kIdent || kKeywords.count(peek().text)) {
      fail(peek(), std::string("expected ") + what);
    }
    return next().text;
  }

  std::optional<std::string> lookup(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return f->second;
    }
    auto p = params_.find(name);
    if (p != params_.end()) return p->second;
    if (assigned_.count(name)) return std::string();
    return std::nullopt;
  }

  std::vector<Statement> parse_block() {
    Token open = peek();
    expect("{");
    scopes_.emplace_back();
    std::vector<Statement> body;
    while (!is_punct("}")) {
      if (peek().kind == Tok::kEof) fail(open, "unbalanced braces: missing '}'");
      body.push_back(parse_statement());
    }
    next();
    scopes_.pop_back();
    return body;
  }

  Statement parse_statement() {
    const Token& t = peek();
    Statement s;
    if (t.kind == Tok::kIdent && (t.text == "if" || t.text == "while")) {
      s.kind = t.text == "if" ? StmtKind::kIf : StmtKind::kWhile;
      next();
      expect("(");
      s.expr = parse_expr();
      expect(")");
      s.body = parse_block();
      if (is_word("else")) fail(peek(), "else branches are not part of the grammar");
      return s;
    }
    if (is_word("try")) {
      next();
      s.kind = StmtKind::kTry;
      s.body = parse_block();
      if (!is_word("catch")) fail(peek(), "expected 'catch' after try block");
      while (is_word("catch")) {
        next();
        expect("(");
        Token type_tok = peek();
        CatchClause c;
        c.type = expect_ident("exception type");
        if (!is_valid_type_name(c.type)) {
          throw TypeNameError(type_tok.line, type_tok.col, "'" + c.type + "' is not a type name");
        }
        scopes_.emplace_back();
        if (peek().kind == Tok::kIdent) {
          c.var = expect_ident("exception variable");
          scopes_.back()[c.var] = c.type;
        }
        expect(")");
        c.body = parse_block();
        scopes_.pop_back();
        s.catches.push_back(std::move(c));
      }
      if (is_word("finally")) fail(peek(), "finally blocks are not part of the grammar");
      return s;
    }
    if (t.kind == Tok::kIdent && kKeywords.count(t.text) && t.text != "new" &&
        t.text != "null" && t.text != "true" && t.text != "false") {
      fail(t, "'" + t.text + "' statements are not part of the grammar");
    }
    // Declaration: Type name [= expr];
    if (t.kind == Tok::kIdent && peek(1).kind == Tok::kIdent &&
        (is_punct("=", 2) || is_punct(";", 2))) {
      Token type_tok = next();
      if (!is_valid_type_name(type_tok.text)) {
        throw TypeNameError(type_tok.line, type_tok.col,
                            "'" + type_tok.text + "' is not a type name");
      }
      s.kind = StmtKind::kDeclaration;
      s.type = type_tok.text;
      s.name = expect_ident("variable name");
      if (is_punct("=")) {
        next();
        s.expr = parse_expr();
      }
      expect(";");
      scopes_.back()[s.name] = s.type;
      def_names_.insert(s.name);
      return s;
    }
    // Assignment: name = expr;
    if (t.kind == Tok::kIdent && is_punct("=", 1)) {
      s.kind = StmtKind::kAssignment;
      s.name = expect_ident("variable name");
      next();
      s.expr = parse_expr();
      expect(";");
      if (!lookup(s.name)) assigned_.insert(s.name);
      def_names_.insert(s.name);
      return s;
    }
    Token start = peek();
    s.kind = StmtKind::kExpression;
    s.expr = parse_expr();
    if (s.expr->kind != ExprKind::kMethodCall && s.expr->kind != ExprKind::kConstructor) {
      fail(start, "not a statement");
    }
    expect(";");
    return s;
  }

  std::vector<ExprPtr> parse_args() {
    expect("(");
    std::vector<ExprPtr> args;
    if (!is_punct(")")) {
      for (;;) {
        args.push_back(parse_expr());
        if (is_punct(",")) {
          next();
          continue;
        }
        break;
      }
    }
    expect(")");
    return args;
  }

  ExprPtr parse_expr() {
    ExprPtr e = parse_primary();
    while (is_punct(".")) {
      next();
      std::string member = expect_ident("member name");
      if (is_punct("(")) {
        e = Expr::method_call(std::move(e), member, parse_args());
      } else {
        e = Expr::field_access(std::move(e), member);
      }
    }
    return e;
  }

  ExprPtr parse_primary() {
    Token t = peek();
    switch (t.kind) {
      case Tok::kInt:
        next();
        return Expr::literal(t.text, LiteralType::kInt);
      case Tok::kLong:
        next();
        return Expr::literal(t.text, LiteralType::kLong);
      case Tok::kDouble:
        next();
        return Expr::literal(t.text, LiteralType::kDouble);
      case Tok::kString:
        next();
        return Expr::literal(t.text, LiteralType::kString);
      case Tok::kChar:
        next();
        return Expr::literal(t.text, LiteralType::kChar);
      case Tok::kPlaceholder:
        next();
        return Expr::placeholder(t.text);
      case Tok::kPunct:
        if (t.text == "(" && is_word("short", 1) && is_punct(")", 2) &&
            peek(3).kind == Tok::kInt) {
          next();
          next();
          next();
          return Expr::literal(next().text, LiteralType::kShort);
        }
        fail(t, "expected expression");
      case Tok::kEof:
        fail(t, "expected expression");
      case Tok::kIdent:
        break;
    }
    if (t.text == "null") {
      next();
      return Expr::null_const();
    }
    if (t.text == "true" || t.text == "false") {
      next();
      return Expr::literal(t.text, LiteralType::kBoolean);
    }
    if (t.text == "new") {
      next();
      Token type_tok = peek();
      std::string type = expect_ident("type name after 'new'");
      if (!is_valid_type_name(type)) fail(type_tok, "'" + type + "' is not a type name");
      return Expr::constructor(type, parse_args());
    }
    if (kKeywords.count(t.text)) fail(t, "expected expression");
    next();
    if (is_punct("(")) return Expr::implicit_call(t.text, parse_args());
    if (auto type = lookup(t.text)) return Expr::variable(t.text, *type);
    if (std::isupper(static_cast<unsigned char>(t.text[0])) && is_punct(".")) {
      next();
      std::string member = expect_ident("member name");
      if (is_punct("(")) return Expr::static_call(t.text, member, parse_args());
      bool all_caps = std::all_of(member.begin(), member.end(), [](char c) {
        return std::isupper(static_cast<unsigned char>(c)) ||
               std::isdigit(static_cast<unsigned char>(c)) || c == '_';
      });
      if (all_caps) return Expr::enum_access(t.text, member);
      return Expr::static_field(t.text, member);
    }
    if (std::find(free_refs_.begin(), free_refs_.end(), t.text) == free_refs_.end()) {
      free_refs_.push_back(t.text);
    }
    return Expr::variable(t.text, "");
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::map<std::string, std::string> params_;
  std::vector<std::map<std::string, std::string>> scopes_;
  std::set<std::string> assigned_;
  std::set<std::string> def_names_;
  std::vector<std::string> free_refs_;
};

std::string trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

bool is_valid_type_name(std::string_view name) {
  if (name.empty()) return false;
  if (kPrimitives.count(name)) return true;
  if (!std::isupper(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin(), name.end(), is_ident_char);
}

ScsExample parse_example(std::string_view body, std::vector<Param> context, std::string id,
                         int first_line) {
  Parser p(Lexer(body, first_line).run(), context);
  ScsExample ex;
  ex.id = std::move(id);
  ex.statements = p.parse_statements();
  ex.context_params = std::move(context);
  ex.free_vars = p.free_vars();
  return ex;
}

ExprPtr parse_expression(std::string_view text, const std::vector<Param>& scope) {
  Parser p(Lexer(text, 1).run(), scope);
  return p.parse_single_expression();
}

std::vector<ScsExample> parse_corpus(std::string_view text, std::string_view source_uri) {
  static const std::regex kHeader(R"(^#example\s+(\S+)\s*(?:\((.*)\))?\s*$)");
  std::vector<ScsExample> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t.starts_with("//")) continue;
    std::smatch m;
    if (!std::regex_match(t, m, kHeader)) {
      throw SyntaxError(line_no, 1, "expected '#example <id> (<params>)' header");
    }
    std::vector<Param> params;
    std::string plist = m[2].str();
    if (!trim(plist).empty()) {
      std::stringstream ps(plist);
      std::string item;
      while (std::getline(ps, item, ',')) {
        auto colon = item.find(':');
        std::string name = trim(item.substr(0, colon));
        std::string type = colon == std::string::npos ? "" : trim(item.substr(colon + 1));
        if (name.empty() || !is_valid_type_name(type)) {
          throw SyntaxError(line_no, 1, "malformed context parameter '" + trim(item) + "'");
        }
        params.push_back({name, type});
      }
    }
    int header_line = line_no;
    std::string body;
    bool closed = false;
    while (std::getline(in, line)) {
      ++line_no;
      if (trim(line) == "#end") {
        closed = true;
        break;
      }
      body += line;
      body += '\n';
    }
    if (!closed) throw SyntaxError(header_line, 1, "example '" + m[1].str() + "' lacks #end");
    ScsExample ex = parse_example(body, std::move(params), m[1].str(), header_line + 1);
    if (!source_uri.empty()) ex.source_uri = std::string(source_uri);
    for (const auto& prev : out) {
      if (prev.id == ex.id) throw SyntaxError(header_line, 1, "duplicate example id '" + ex.id + "'");
    }
    out.push_back(std::move(ex));
  }
  return out;
}

std::vector<ScsExample> load_corpus_dir(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_regular_file(dir)) {
    files.push_back(dir);
  } else {
    for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".scs") files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<ScsExample> out;
  std::set<std::string> ids;
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    for (auto& ex : parse_corpus(ss.str(), f.generic_string())) {
      if (!ids.insert(ex.id).second) {
        throw PreconditionError("duplicate example id '" + ex.id + "' in " + f.string());
      }
      out.push_back(std::move(ex));
    }
  }
  return out;
}

}  // namespace patternforge
