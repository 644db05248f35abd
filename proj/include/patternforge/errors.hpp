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

#ifndef PATTERNFORGE_ERRORS_HPP_
#define PATTERNFORGE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace patternforge {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed SCS text. Line and column are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(int line, int col, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + message),
        line_(line),
        col_(col),
        message_(message) {}

  int line() const { return line_; }
  int col() const { return col_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  int col_;
  std::string message_;
};

// A declaration names something that cannot be a type.
class TypeNameError : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

// Invalid API model document. `path` is a JSON-pointer-like location.
class ModelError : public Error {
 public:
  ModelError(std::string path, const std::string& message)
      : Error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class UnknownType : public Error {
 public:
  explicit UnknownType(const std::string& name)
      : Error("unknown type '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class UnknownMethodToken : public Error {
 public:
  explicit UnknownMethodToken(const std::string& token)
      : Error("no API method for token '" + token + "'") {}
};

class NoMatch : public Error {
 public:
  using Error::Error;
};

class NoEmbedding : public NoMatch {
 public:
  using NoMatch::NoMatch;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class UnknownPattern : public Error {
 public:
  explicit UnknownPattern(const std::string& id)
      : Error("unknown pattern '" + id + "'") {}
};

class UnknownGroup : public Error {
 public:
  explicit UnknownGroup(const std::string& id)
      : Error("unknown hole group '" + id + "'") {}
};

class UnknownSession : public Error {
 public:
  explicit UnknownSession(const std::string& id)
      : Error("unknown session '" + id + "'") {}
};

class ModelMismatch : public Error {
 public:
  using Error::Error;
};

class TypeMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace patternforge

#endif  // PATTERNFORGE_ERRORS_HPP_
