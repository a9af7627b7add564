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

#ifndef ACCENTFORGE_LEXICON_HPP_
#define ACCENTFORGE_LEXICON_HPP_

#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "accentforge/phoneset.hpp"
#include "accentforge/rewrite.hpp"
#include "accentforge/rules.hpp"

namespace accentforge {

/// A dictionary entry. Variant suffixes like "WORD(2)" are kept verbatim so
/// CMU-style dictionaries survive round trips.
struct LexiconEntry {
  std::string word;
  PhoneSeq pron;
};

/// Ordered word -> pronunciation entries. Order is preserved through
/// adaptation and emission so output diffs stay stable.
struct Lexicon {
  std::vector<LexiconEntry> entries;
  SymbolSet phone_set = SymbolSet::kCanonical;
};

struct LexiconLoad {
  Lexicon lexicon;
  std::size_t warnings = 0;
};

/// Loads a dictionary in `WORD  PH PH PH` format (two-or-more spaces or a
/// tab between word and pronunciation); ';;;' lines are comments. In strict
/// mode malformed lines raise ParseError with the line number; in lenient
/// mode they are skipped and counted, and unknown phones pass through
/// tagged.
inline LexiconLoad load_lexicon(std::istream& in, SymbolSet set,
                                const SymbolTable& table,
                                ParseMode mode = ParseMode::kStrict,
                                const std::string& filename = "") {
  LexiconLoad result;
  result.lexicon.phone_set = set;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.rfind(";;;", 0) == 0) continue;
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    auto tab = line.find('\t');
    auto spaces = line.find("  ");
    auto sep = std::min(tab, spaces);
    if (sep == std::string::npos || sep == 0) {
      if (mode == ParseMode::kLenient) {
        ++result.warnings;
        continue;
      }
      throw ParseError("expected 'WORD  PH PH ...' (two spaces or tab)",
                       lineno, filename);
    }
    LexiconEntry entry;
    entry.word = detail::trim(line.substr(0, sep));
    std::string pron_text = detail::trim(line.substr(sep));
    if (entry.word.empty() || pron_text.empty()) {
      if (mode == ParseMode::kLenient) {
        ++result.warnings;
        continue;
      }
      throw ParseError("entry needs a word and a pronunciation", lineno,
                       filename);
    }
    try {
      entry.pron =
          parse_phone_string(pron_text, set, table, mode, &result.warnings);
    } catch (const UnknownTokenError& e) {
      throw ParseError(std::string(e.what()) + " in entry '" + entry.word +
                           "'",
                       lineno, filename);
    }
    if (entry.pron.empty()) {
      if (mode == ParseMode::kLenient) {
        ++result.warnings;
        continue;
      }
      throw ParseError("empty pronunciation for '" + entry.word + "'", lineno,
                       filename);
    }
    result.lexicon.entries.push_back(std::move(entry));
  }
  return result;
}

inline LexiconLoad load_lexicon(const std::string& path, SymbolSet set,
                                const SymbolTable& table,
                                ParseMode mode = ParseMode::kStrict) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open lexicon", 0, path);
  return load_lexicon(in, set, table, mode, path);
}

struct AdaptStats {
  std::size_t entries = 0;
  std::size_t changed = 0;
  std::size_t rule_applications = 0;
};

struct AdaptResult {
  Lexicon lexicon;
  AdaptStats stats;
  std::vector<RewriteTrace> traces;  // parallel to entries when collected
};

/// Runs the rewrite engine over every entry. Words and entry order are
/// untouched; an entry counts as changed when at least one rule fired.
inline AdaptResult adapt_lexicon(const Lexicon& lex, const CompiledRuleSet& crs,
                                 bool keep_traces = false) {
  AdaptResult result;
  result.lexicon.phone_set = lex.phone_set;
  result.lexicon.entries.reserve(lex.entries.size());
  if (keep_traces) result.traces.reserve(lex.entries.size());
  for (const auto& entry : lex.entries) {
    RewriteResult rw = rewrite(entry.pron, crs);
    result.stats.rule_applications += rw.trace.steps.size();
    if (!rw.trace.steps.empty()) ++result.stats.changed;
    result.lexicon.entries.push_back({entry.word, std::move(rw.output)});
    if (keep_traces) result.traces.push_back(std::move(rw.trace));
  }
  result.stats.entries = result.lexicon.entries.size();
  return result;
}

/// Writes a lexicon in the load format (`WORD  PH PH`, two spaces). Strict
/// mode fails with one error listing every word containing a phone without
/// a mapping in the target set.
inline void emit_lexicon(const Lexicon& lex, SymbolSet set,
                         const SymbolTable& table, std::ostream& out,
                         ParseMode mode = ParseMode::kStrict,
                         std::size_t* warnings = nullptr) {
  std::vector<std::string> failed;
  std::string body;
  for (const auto& entry : lex.entries) {
    try {
      std::string tokens = convert(entry.pron, set, table, mode, warnings);
      body += entry.word;
      body += "  ";
      body += tokens;
      body += '\n';
    } catch (const UnmappedPhoneError&) {
      failed.push_back(entry.word);
    }
  }
  if (!failed.empty()) {
    std::string msg = "unmapped phones in target set '" +
                      std::string(symbol_set_name(set)) + "' for:";
    for (const auto& w : failed) msg += " " + w;
    throw UnmappedPhoneError(failed.front(), symbol_set_name(set), msg);
  }
  out << body;
}

inline void emit_lexicon(const Lexicon& lex, SymbolSet set,
                         const SymbolTable& table, const std::string& path,
                         ParseMode mode = ParseMode::kStrict,
                         std::size_t* warnings = nullptr) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write lexicon to '" + path + "'");
  emit_lexicon(lex, set, table, out, mode, warnings);
}

}  // namespace accentforge

#endif  // ACCENTFORGE_LEXICON_HPP_
