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

#ifndef ACCENTFORGE_RULES_HPP_
#define ACCENTFORGE_RULES_HPP_

#include <algorithm>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "accentforge/error.hpp"
#include "accentforge/groups.hpp"
#include "accentforge/phoneset.hpp"

namespace accentforge {

enum class RuleStatus { kActive, kUnresolved, kDiscarded };

inline const char* rule_status_name(RuleStatus s) {
  switch (s) {
    case RuleStatus::kActive: return "active";
    case RuleStatus::kUnresolved: return "unresolved";
    case RuleStatus::kDiscarded: return "discarded";
  }
  return "?";
}

/// Where a rule applies: everywhere, in a set of speaker groups, or for a
/// set of native languages. "lang: *all" marks a native-language-specific
/// rule that applies for every language (but is not universal: it is never
/// selected by an empty query).
struct RuleScope {
  enum class Kind { kUniversal, kGroups, kLanguages };
  Kind kind = Kind::kUniversal;
  std::set<int> groups;
  std::set<std::string> languages;
  bool all_languages = false;
};

/// One source -> target rewrite with optional single-symbol contexts.
/// Contexts are a phone or the boundary '#'. A rule with an empty source
/// (pure insertion) must carry at least one context; an empty target is a
/// deletion. Unresolved rules are never applied.
struct RewriteRule {
  std::string id;
  PhoneSeq source;
  PhoneSeq target;
  std::optional<std::string> left_ctx;
  std::optional<std::string> right_ctx;
  RuleScope scope;
  int category = 0;  // 1..3, or 0 when untagged (e.g. mined rules)
  RuleStatus status = RuleStatus::kActive;

  /// Identity used for rule comparison across sets: source, target and
  /// contexts, independent of id, scope and category.
  std::string identity() const {
    std::string key = join(source);
    key += '\x1f';
    key += join(target);
    key += '\x1f';
    key += left_ctx.value_or("");
    key += '\x1f';
    key += right_ctx.value_or("");
    return key;
  }
};

/// An ordered rule list. Order is significant: it breaks ties between
/// equal-length matches during application.
struct RuleSet {
  std::string name;
  std::string description;
  std::vector<RewriteRule> rules;

  const RewriteRule* find(const std::string& id) const {
    for (const auto& r : rules)
      if (r.id == id) return &r;
    return nullptr;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline int parse_group_id(const std::string& tok, std::size_t lineno,
                          const std::string& file) {
  std::string t = tok;
  if (!t.empty() && (t[0] == 'g' || t[0] == 'G')) t = t.substr(1);
  if (t.size() == 1 && t[0] >= '1' && t[0] <= '0' + kGroupCount)
    return t[0] - '0';
  throw ParseError("bad group id '" + tok + "'", lineno, file);
}

}  // namespace detail

/// Parses the line-oriented rule DSL. Grammar per line:
///
///   rule <id> [cat:<1|2|3>] [scope: universal | groups g1,g4 |
///              lang: Tamil,Telugu] [status: active|unresolved|discarded] :
///         <src tokens> -> <tgt tokens> [/ <left> _ <right>] ;
///
/// '#' lines are comments; omitted scope means universal; omitted status
/// means active. Bare [lang: ...] and [groups: ...] are accepted as scope
/// shorthand, and 'lang: *all' marks a language-specific rule covering all
/// languages. Phones are validated against the symbol table.
inline RuleSet parse_rules(std::istream& in, const SymbolTable& table,
                           const std::string& filename = "") {
  RuleSet rs;
  rs.name = filename;
  std::string line;
  std::size_t lineno = 0;
  std::unordered_set<std::string> seen_ids;

  auto check_phone = [&](const std::string& tok, std::size_t ln,
                         bool allow_boundary) {
    if (tok == kBoundary) {
      if (allow_boundary) return;
      throw ParseError("boundary '#' not allowed here", ln, filename);
    }
    const Phone* p = table.find(tok);
    if (!p) throw ParseError("unknown phone symbol '" + tok + "'", ln, filename);
    if (p->is_boundary() && !allow_boundary)
      throw ParseError("boundary '#' not allowed here", ln, filename);
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string text = detail::trim(line);
    if (text.empty() || text[0] == '#') continue;

    if (text.rfind("rule", 0) != 0)
      throw ParseError("expected 'rule'", lineno, filename);
    if (text.back() != ';')
      throw ParseError("missing terminating ';'", lineno, filename);
    text = detail::trim(text.substr(4, text.size() - 5));

    // Split header from body at the first ':' outside brackets.
    std::size_t depth = 0, colon = std::string::npos;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '[') ++depth;
      else if (text[i] == ']') { if (depth == 0)
          throw ParseError("unbalanced ']'", lineno, filename); --depth; }
      else if (text[i] == ':' && depth == 0) { colon = i; break; }
    }
    if (colon == std::string::npos)
      throw ParseError("missing ':' before rule body", lineno, filename);
    std::string header = detail::trim(text.substr(0, colon));
    std::string body = detail::trim(text.substr(colon + 1));

    RewriteRule rule;
    bool scope_set = false;

    // Header: id followed by zero or more [key: value] attributes.
    std::size_t hpos = 0;
    while (hpos < header.size() && header[hpos] != '[' &&
           header[hpos] != ' ' && header[hpos] != '\t')
      ++hpos;
    rule.id = header.substr(0, hpos);
    if (rule.id.empty())
      throw ParseError("missing rule id", lineno, filename);
    if (!seen_ids.insert(rule.id).second)
      throw ParseError("duplicate rule id '" + rule.id + "'", lineno,
                       filename);

    std::string rest = detail::trim(header.substr(hpos));
    while (!rest.empty()) {
      if (rest[0] != '[')
        throw ParseError("unexpected text '" + rest + "' in rule header",
                         lineno, filename);
      auto close = rest.find(']');
      if (close == std::string::npos)
        throw ParseError("unbalanced '['", lineno, filename);
      std::string attr = detail::trim(rest.substr(1, close - 1));
      rest = detail::trim(rest.substr(close + 1));

      auto sep = attr.find(':');
      if (sep == std::string::npos)
        throw ParseError("bad attribute '" + attr + "'", lineno, filename);
      std::string key = detail::trim(attr.substr(0, sep));
      std::string value = detail::trim(attr.substr(sep + 1));

      auto set_scope_langs = [&](const std::string& v) {
        rule.scope.kind = RuleScope::Kind::kLanguages;
        for (const auto& name : detail::split_commas(v)) {
          if (name == "*all") rule.scope.all_languages = true;
          else rule.scope.languages.insert(name);
        }
        if (!rule.scope.all_languages && rule.scope.languages.empty())
          throw ParseError("empty language list", lineno, filename);
        scope_set = true;
      };
      auto set_scope_groups = [&](const std::string& v) {
        rule.scope.kind = RuleScope::Kind::kGroups;
        for (const auto& g : detail::split_commas(v))
          rule.scope.groups.insert(detail::parse_group_id(g, lineno, filename));
        if (rule.scope.groups.empty())
          throw ParseError("empty group list", lineno, filename);
        scope_set = true;
      };

      if (key == "cat") {
        if (value != "1" && value != "2" && value != "3")
          throw ParseError("bad category '" + value + "'", lineno, filename);
        rule.category = value[0] - '0';
      } else if (key == "status") {
        if (value == "active") rule.status = RuleStatus::kActive;
        else if (value == "unresolved") rule.status = RuleStatus::kUnresolved;
        else if (value == "discarded") rule.status = RuleStatus::kDiscarded;
        else throw ParseError("bad status '" + value + "'", lineno, filename);
      } else if (key == "lang") {
        set_scope_langs(value);
      } else if (key == "groups") {
        set_scope_groups(value);
      } else if (key == "scope") {
        if (value == "universal") {
          rule.scope.kind = RuleScope::Kind::kUniversal;
          scope_set = true;
        } else if (value.rfind("groups", 0) == 0) {
          set_scope_groups(detail::trim(value.substr(6)));
        } else if (value.rfind("lang", 0) == 0) {
          std::string v = detail::trim(value.substr(4));
          if (!v.empty() && v[0] == ':') v = detail::trim(v.substr(1));
          set_scope_langs(v);
        } else {
          throw ParseError("bad scope '" + value + "'", lineno, filename);
        }
      } else {
        throw ParseError("unknown attribute '" + key + "'", lineno, filename);
      }
    }
    (void)scope_set;

    // Body: src -> tgt [/ left _ right]
    auto arrow = body.find("->");
    if (arrow == std::string::npos)
      throw ParseError("missing '->'", lineno, filename);
    std::string src_text = detail::trim(body.substr(0, arrow));
    std::string rest_text = detail::trim(body.substr(arrow + 2));
    std::string tgt_text = rest_text, ctx_text;
    auto slash = rest_text.find('/');
    if (slash != std::string::npos) {
      tgt_text = detail::trim(rest_text.substr(0, slash));
      ctx_text = detail::trim(rest_text.substr(slash + 1));
    }

    rule.source = detail::split_ws(src_text);
    rule.target = detail::split_ws(tgt_text);
    for (const auto& t : rule.source) check_phone(t, lineno, false);
    for (const auto& t : rule.target) check_phone(t, lineno, false);

    if (!ctx_text.empty()) {
      auto tokens = detail::split_ws(ctx_text);
      auto underscore = std::find(tokens.begin(), tokens.end(), "_");
      if (underscore == tokens.end())
        throw ParseError("context missing '_'", lineno, filename);
      std::vector<std::string> left(tokens.begin(), underscore);
      std::vector<std::string> right(underscore + 1, tokens.end());
      if (left.size() > 1 || right.size() > 1)
        throw ParseError("contexts are single symbols", lineno, filename);
      if (!left.empty()) {
        check_phone(left[0], lineno, true);
        rule.left_ctx = left[0];
      }
      if (!right.empty()) {
        check_phone(right[0], lineno, true);
        rule.right_ctx = right[0];
      }
      if (!rule.left_ctx && !rule.right_ctx)
        throw ParseError("empty context", lineno, filename);
    }

    if (rule.source.empty() && rule.target.empty())
      throw ParseError("source and target are both empty", lineno, filename);
    if (rule.source.empty() && !rule.left_ctx && !rule.right_ctx)
      throw ParseError("insertion rule needs a context", lineno, filename);

    rs.rules.push_back(std::move(rule));
  }
  return rs;
}

inline RuleSet parse_rule_file(const std::string& path,
                               const SymbolTable& table) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open rule file", 0, path);
  RuleSet rs = parse_rules(in, table, path);
  return rs;
}

/// Writes a rule set back in DSL form. parse(emit(rs)) preserves rule
/// content and order.
inline void emit_rules(const RuleSet& rs, std::ostream& out) {
  for (const auto& r : rs.rules) {
    out << "rule " << r.id;
    if (r.category != 0) out << " [cat:" << r.category << "]";
    if (r.scope.kind == RuleScope::Kind::kGroups) {
      out << " [scope: groups ";
      bool first = true;
      for (int g : r.scope.groups) {
        if (!first) out << ",";
        out << "g" << g;
        first = false;
      }
      out << "]";
    } else if (r.scope.kind == RuleScope::Kind::kLanguages) {
      out << " [lang: ";
      if (r.scope.all_languages) {
        out << "*all";
      } else {
        bool first = true;
        for (const auto& l : r.scope.languages) {
          if (!first) out << ",";
          out << l;
          first = false;
        }
      }
      out << "]";
    }
    if (r.status != RuleStatus::kActive)
      out << " [status: " << rule_status_name(r.status) << "]";
    out << ": " << join(r.source) << " -> " << join(r.target);
    if (r.left_ctx || r.right_ctx) {
      out << " / ";
      if (r.left_ctx) out << *r.left_ctx << " ";
      out << "_";
      if (r.right_ctx) out << " " << *r.right_ctx;
    }
    out << " ;\n";
  }
}

/// Scope query. Rules are selected when their scope covers any requested
/// language or region; universal rules are always included. Only rules
/// whose status is in `statuses` survive (active only, by default).
struct SelectQuery {
  std::set<std::string> languages;
  std::set<int> regions;
  std::set<int> categories;
  std::set<RuleStatus> statuses = {RuleStatus::kActive};
};

inline RuleSet select(const RuleSet& rs, const SelectQuery& query) {
  for (const auto& lang : query.languages)
    if (!find_language(lang)) throw Error("unknown language '" + lang + "'");
  for (int g : query.regions)
    if (g < 1 || g > kGroupCount)
      throw Error("unknown group '" + std::to_string(g) + "'");

  std::set<int> query_groups = query.regions;
  for (const auto& lang : query.languages)
    query_groups.insert(*group_of(lang));

  RuleSet out;
  out.name = rs.name;
  out.description = rs.description;
  for (const auto& r : rs.rules) {
    if (!query.statuses.count(r.status)) continue;
    if (!query.categories.empty() && !query.categories.count(r.category))
      continue;

    bool covered = false;
    switch (r.scope.kind) {
      case RuleScope::Kind::kUniversal:
        covered = true;
        break;
      case RuleScope::Kind::kGroups:
        for (int g : query_groups)
          if (r.scope.groups.count(g)) covered = true;
        break;
      case RuleScope::Kind::kLanguages:
        if (r.scope.all_languages) {
          covered = !query.languages.empty() || !query.regions.empty();
        } else {
          for (const auto& lang : query.languages)
            if (r.scope.languages.count(lang)) covered = true;
          if (!covered)
            for (const auto& lang : r.scope.languages) {
              auto g = group_of(lang);
              if (g && query.regions.count(*g)) covered = true;
            }
        }
        break;
    }
    if (covered) out.rules.push_back(r);
  }
  return out;
}

/// Rule set compiled for application: active rules only, indexed by the
/// first source phone (insertions by their anchor context). Candidate
/// lists preserve longest-source-first order with file order breaking ties.
class CompiledRuleSet {
 public:
  CompiledRuleSet() = default;

  explicit CompiledRuleSet(const RuleSet& rs) {
    for (const auto& r : rs.rules)
      if (r.status == RuleStatus::kActive) rules_.push_back(r);
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      if (rules_[i].source.empty())
        insertions_.push_back(i);
      else
        buckets_[rules_[i].source[0]].push_back(i);
    }
    for (auto& [anchor, ids] : buckets_) {
      std::stable_sort(ids.begin(), ids.end(),
                       [this](std::size_t a, std::size_t b) {
                         return rules_[a].source.size() >
                                rules_[b].source.size();
                       });
    }
  }

  std::size_t size() const { return rules_.size(); }
  const std::vector<RewriteRule>& rules() const { return rules_; }

  /// Substitution/deletion candidates anchored at this phone, longest
  /// source first.
  const std::vector<std::size_t>* candidates(const std::string& phone) const {
    auto it = buckets_.find(phone);
    return it == buckets_.end() ? nullptr : &it->second;
  }

  /// Pure-insertion rules, in file order.
  const std::vector<std::size_t>& insertions() const { return insertions_; }

 private:
  std::vector<RewriteRule> rules_;
  std::unordered_map<std::string, std::vector<std::size_t>> buckets_;
  std::vector<std::size_t> insertions_;
};

inline CompiledRuleSet compile(const RuleSet& rs) {
  return CompiledRuleSet(rs);
}

}  // namespace accentforge

#endif  // ACCENTFORGE_RULES_HPP_
