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

#ifndef ACCENTFORGE_PHONESET_HPP_
#define ACCENTFORGE_PHONESET_HPP_

#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "accentforge/error.hpp"

namespace accentforge {

/// A pronunciation is an ordered list of canonical phone symbols.
/// It never contains the boundary symbol "#", which exists only as a
/// rule-context marker.
using PhoneSeq = std::vector<std::string>;

constexpr const char* kBoundary = "#";

enum class PhoneCategory { kVowel, kConsonant, kBoundary };

enum class SymbolSet { kCanonical, kIpa, kArpabet, kCps };

enum class ParseMode { kStrict, kLenient };

/// Prefix used to carry unresolved tokens through a lenient parse.
constexpr const char* kUnknownPrefix = "unk:";

inline bool is_unknown_token(const std::string& symbol) {
  return symbol.rfind(kUnknownPrefix, 0) == 0;
}

inline std::optional<SymbolSet> parse_symbol_set(const std::string& name) {
  if (name == "canonical") return SymbolSet::kCanonical;
  if (name == "ipa") return SymbolSet::kIpa;
  if (name == "arpabet") return SymbolSet::kArpabet;
  if (name == "cps") return SymbolSet::kCps;
  return std::nullopt;
}

inline const char* symbol_set_name(SymbolSet set) {
  switch (set) {
    case SymbolSet::kCanonical: return "canonical";
    case SymbolSet::kIpa: return "ipa";
    case SymbolSet::kArpabet: return "arpabet";
    case SymbolSet::kCps: return "cps";
  }
  return "?";
}

/// One canonical phone with its articulatory feature tags.
/// Aspiration, retroflexion, vowel length and nasalisation are features of
/// a single phone; an aspirated stop is one symbol, never stop + /h/.
struct Phone {
  std::string symbol;
  PhoneCategory category = PhoneCategory::kConsonant;
  std::unordered_set<std::string> features;

  bool has_feature(const std::string& tag) const {
    return features.count(tag) > 0;
  }
  bool is_vowel() const { return category == PhoneCategory::kVowel; }
  bool is_boundary() const { return category == PhoneCategory::kBoundary; }
  bool voiced() const { return has_feature("voiced"); }
  bool aspirated() const { return has_feature("aspirated"); }
  bool nasalized() const { return has_feature("nasalized"); }

  /// Place of articulation, when one of the known place tags is present.
  std::optional<std::string> place() const {
    static const char* kPlaces[] = {"velar",  "palatal",  "retroflex",
                                    "dental", "bilabial", "alveolar",
                                    "labiodental", "glottal", "uvular"};
    for (const char* p : kPlaces)
      if (features.count(p)) return std::string(p);
    return std::nullopt;
  }
};

/// Immutable canonical symbol table with per-set external mappings.
///
/// File format (UTF-8 TSV):
///   canonical <TAB> ipa <TAB> arpabet <TAB> cps <TAB> features
/// '-' marks an absent mapping; the features column is comma-separated and
/// must contain exactly one of vowel/consonant/boundary. Lines starting
/// with '#' are comments, except the boundary row itself, whose first field
/// is the literal '#' followed by a tab.
class SymbolTable {
 public:
  SymbolTable() = default;

  static SymbolTable load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open symbol table", 0, path);
    return load(in, path);
  }

  static SymbolTable load(std::istream& in, const std::string& filename = "") {
    SymbolTable table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (is_blank(line)) continue;
      if (line[0] == '#' && !(line.size() > 1 && line[1] == '\t')) continue;
      table.add_row(line, lineno, filename);
    }
    return table;
  }

  std::size_t size() const { return phones_.size(); }
  const std::vector<Phone>& phones() const { return phones_; }

  const Phone* find(const std::string& canonical) const {
    auto it = by_canonical_.find(canonical);
    return it == by_canonical_.end() ? nullptr : &phones_[it->second];
  }

  bool contains(const std::string& canonical) const {
    return by_canonical_.count(canonical) > 0;
  }

  /// Resolves an external token to its canonical symbol. ARPAbet lexical
  /// stress digits (trailing 0/1/2) are stripped before lookup; the
  /// analysis is unstressed-phonemic throughout.
  std::optional<std::string> canonical_for(const std::string& token,
                                           SymbolSet set) const {
    std::string key = token;
    if (set == SymbolSet::kArpabet && key.size() > 1) {
      char last = key.back();
      if (last == '0' || last == '1' || last == '2') key.pop_back();
    }
    const auto& index = index_for(set);
    auto it = index.find(key);
    if (it == index.end()) return std::nullopt;
    return phones_[it->second].symbol;
  }

  /// External token for a canonical symbol, or nullopt if the column is
  /// absent for that phone.
  std::optional<std::string> token_for(const std::string& canonical,
                                       SymbolSet set) const {
    auto it = by_canonical_.find(canonical);
    if (it == by_canonical_.end()) return std::nullopt;
    if (set == SymbolSet::kCanonical) return canonical;
    const std::string& tok = column_for(set)[it->second];
    if (tok.empty()) return std::nullopt;
    return tok;
  }

 private:
  static bool is_blank(const std::string& s) {
    return s.find_first_not_of(" \t") == std::string::npos;
  }

  const std::unordered_map<std::string, std::size_t>& index_for(
      SymbolSet set) const {
    switch (set) {
      case SymbolSet::kCanonical: return by_canonical_;
      case SymbolSet::kIpa: return by_ipa_;
      case SymbolSet::kArpabet: return by_arpabet_;
      case SymbolSet::kCps: return by_cps_;
    }
    return by_canonical_;
  }

  const std::vector<std::string>& column_for(SymbolSet set) const {
    switch (set) {
      case SymbolSet::kIpa: return ipa_;
      case SymbolSet::kArpabet: return arpabet_;
      case SymbolSet::kCps: return cps_;
      default: break;
    }
    return ipa_;
  }

  void add_row(const std::string& line, std::size_t lineno,
               const std::string& filename) {
    std::vector<std::string> cols;
    std::string::size_type start = 0;
    while (true) {
      auto tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab == std::string::npos
                                            ? std::string::npos
                                            : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (cols.size() != 5)
      throw ParseError("expected 5 tab-separated columns, got " +
                           std::to_string(cols.size()),
                       lineno, filename);
    Phone phone;
    phone.symbol = cols[0];
    if (phone.symbol.empty())
      throw ParseError("empty canonical symbol", lineno, filename);
    if (by_canonical_.count(phone.symbol))
      throw ParseError("duplicate canonical symbol '" + phone.symbol + "'",
                       lineno, filename);
    if (cols[1].empty() || cols[1] == "-")
      throw ParseError("missing IPA glyph for '" + phone.symbol + "'", lineno,
                       filename);

    bool category_seen = false;
    std::stringstream fs(cols[4]);
    std::string tag;
    while (std::getline(fs, tag, ',')) {
      if (tag.empty()) continue;
      if (tag == "vowel" || tag == "consonant" || tag == "boundary") {
        if (category_seen)
          throw ParseError("multiple category tags for '" + phone.symbol + "'",
                           lineno, filename);
        category_seen = true;
        phone.category = tag == "vowel" ? PhoneCategory::kVowel
                         : tag == "consonant" ? PhoneCategory::kConsonant
                                              : PhoneCategory::kBoundary;
      } else {
        phone.features.insert(tag);
      }
    }
    if (!category_seen)
      throw ParseError("no vowel/consonant/boundary tag for '" + phone.symbol +
                           "'",
                       lineno, filename);
    if (phone.is_boundary() && boundary_seen_)
      throw ParseError("second boundary symbol '" + phone.symbol + "'", lineno,
                       filename);
    if (phone.is_boundary()) boundary_seen_ = true;

    std::size_t idx = phones_.size();
    auto add_external = [&](const std::string& tok, SymbolSet set,
                            std::unordered_map<std::string, std::size_t>& ix,
                            std::vector<std::string>& col) {
      if (tok == "-" || tok.empty()) {
        col.push_back("");
        return;
      }
      if (ix.count(tok))
        throw ParseError("duplicate " + std::string(symbol_set_name(set)) +
                             " token '" + tok + "'",
                         lineno, filename);
      ix.emplace(tok, idx);
      col.push_back(tok);
    };
    add_external(cols[1], SymbolSet::kIpa, by_ipa_, ipa_);
    add_external(cols[2], SymbolSet::kArpabet, by_arpabet_, arpabet_);
    add_external(cols[3], SymbolSet::kCps, by_cps_, cps_);
    by_canonical_.emplace(phone.symbol, idx);
    phones_.push_back(std::move(phone));
  }

  std::vector<Phone> phones_;
  std::vector<std::string> ipa_, arpabet_, cps_;
  std::unordered_map<std::string, std::size_t> by_canonical_, by_ipa_,
      by_arpabet_, by_cps_;
  bool boundary_seen_ = false;
};

/// Parses whitespace-separated external tokens into a canonical PhoneSeq.
///
/// Strict mode raises UnknownTokenError with the offending token and its
/// 0-based position. Lenient mode passes unknown tokens through tagged
/// "unk:<token>" and counts them in *warnings (may be null).
inline PhoneSeq parse_phone_string(const std::string& text, SymbolSet set,
                                   const SymbolTable& table,
                                   ParseMode mode = ParseMode::kStrict,
                                   std::size_t* warnings = nullptr) {
  PhoneSeq seq;
  std::istringstream in(text);
  std::string token;
  std::size_t pos = 0;
  while (in >> token) {
    auto canonical = table.canonical_for(token, set);
    if (canonical) {
      const Phone* phone = table.find(*canonical);
      if (phone && phone->is_boundary())
        throw Error("boundary symbol '" + token +
                    "' is not allowed inside a phone sequence");
      seq.push_back(*canonical);
    } else if (mode == ParseMode::kLenient) {
      seq.push_back(kUnknownPrefix + token);
      if (warnings) ++*warnings;
    } else {
      throw UnknownTokenError(token, pos);
    }
    ++pos;
  }
  return seq;
}

/// Renders a canonical sequence as space-separated tokens of the target set.
/// In lenient mode unmapped phones fall back to their canonical symbol and
/// unknown-tagged tokens to their original text, counted in *warnings.
inline std::string convert(const PhoneSeq& seq, SymbolSet set,
                           const SymbolTable& table,
                           ParseMode mode = ParseMode::kStrict,
                           std::size_t* warnings = nullptr) {
  std::string out;
  for (const auto& symbol : seq) {
    std::string token;
    if (is_unknown_token(symbol)) {
      if (mode == ParseMode::kStrict)
        throw UnmappedPhoneError(symbol, symbol_set_name(set));
      token = symbol.substr(std::string(kUnknownPrefix).size());
      if (warnings) ++*warnings;
    } else {
      if (!table.contains(symbol))
        throw UnmappedPhoneError(symbol, symbol_set_name(set),
                                 "not in symbol table");
      auto mapped = table.token_for(symbol, set);
      if (!mapped) {
        if (mode == ParseMode::kStrict)
          throw UnmappedPhoneError(symbol, symbol_set_name(set));
        token = symbol;
        if (warnings) ++*warnings;
      } else {
        token = *mapped;
      }
    }
    if (!out.empty()) out += ' ';
    out += token;
  }
  return out;
}

inline std::string join(const PhoneSeq& seq) {
  std::string out;
  for (const auto& s : seq) {
    if (!out.empty()) out += ' ';
    out += s;
  }
  return out;
}

}  // namespace accentforge

#endif  // ACCENTFORGE_PHONESET_HPP_
