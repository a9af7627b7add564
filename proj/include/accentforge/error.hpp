// Copyright 2026 The AccentForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ACCENTFORGE_ERROR_HPP_
#define ACCENTFORGE_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace accentforge {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input file or text; carries a 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line = 0,
             const std::string& file = "")
      : Error(format(msg, line, file)), line_(line), file_(file) {}

  std::size_t line() const { return line_; }
  const std::string& file() const { return file_; }

 private:
  static std::string format(const std::string& msg, std::size_t line,
                            const std::string& file) {
    std::string out;
    if (!file.empty()) out += file + ":";
    if (line > 0) out += std::to_string(line) + ": ";
    else if (!out.empty()) out += " ";
    return out + msg;
  }
  std::size_t line_;
  std::string file_;
};

/// A token that does not resolve in the requested symbol set.
class UnknownTokenError : public Error {
 public:
  UnknownTokenError(const std::string& token, std::size_t position)
      : Error("unknown token '" + token + "' at position " +
              std::to_string(position)),
        token_(token), position_(position) {}

  const std::string& token() const { return token_; }
  std::size_t position() const { return position_; }

 private:
  std::string token_;
  std::size_t position_;
};

/// A canonical phone with no mapping in the requested target set.
class UnmappedPhoneError : public Error {
 public:
  UnmappedPhoneError(const std::string& symbol, const std::string& target_set,
                     const std::string& context = "")
      : Error("phone '" + symbol + "' has no mapping in set '" + target_set +
              "'" + (context.empty() ? "" : " (" + context + ")")),
        symbol_(symbol), target_set_(target_set) {}

  const std::string& symbol() const { return symbol_; }
  const std::string& target_set() const { return target_set_; }

 private:
  std::string symbol_;
  std::string target_set_;
};

}  // namespace accentforge

#endif  // ACCENTFORGE_ERROR_HPP_
