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

#ifndef ACCENTFORGE_INVENTORY_HPP_
#define ACCENTFORGE_INVENTORY_HPP_

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "accentforge/error.hpp"
#include "accentforge/groups.hpp"
#include "accentforge/phoneset.hpp"
#include "accentforge/rules.hpp"

namespace accentforge {

/// Characteristic tags a language may bear. The first block reproduces the
/// per-language characteristics table; the second holds inventory-level
/// traits shared across most of the languages, which ground the universal
/// rule verdicts.
inline const std::set<std::string>& known_characteristics() {
  static const std::set<std::string> kTags = {
      // per-language characteristics
      "inherent_schwa", "vowel_length_distinction", "non_phonemic_aspiration",
      "intervocalic_voicing", "no_voiced_consonants", "trills_and_flaps",
      "vowel_harmony", "semivowel_prothesis", "inherent_vowel_central",
      "inherent_vowel_open_o", "consonant_palatalisation",
      "word_final_schwa_deletion", "word_medial_schwa_deletion",
      "schwa_deletion", "schwa_fronting", "vowel_nasalisation",
      "no_vowel_nasalisation", "tonality", "consonant_gemination",
      "vowel_quality_contrast", "complex_phonotactics",
      "interchangeable_vowels_semivowels", "no_consonant_clusters",
      "reduced_phoneme_set",
      // inventory-level traits
      "tense_vowel_inventory", "limited_diphthong_inventory",
      "dental_stop_series", "retroflex_stop_series", "aspirated_stop_series",
  };
  return kTags;
}

struct LanguageProfile {
  std::string name;
  int group = 0;
  std::string region;
  std::string family;
  std::set<std::string> inventory;
  std::set<std::string> characteristics;
};

/// Loads language profiles from TSV:
///   language TAB group TAB region TAB family TAB declared_count
///   TAB phones (space-separated) TAB tags (comma-separated)
/// The declared count must match the inventory size exactly; groups of the
/// known languages must match their published group. When a symbol table is
/// given, every phone must resolve in it.
inline std::vector<LanguageProfile> load_profiles(
    std::istream& in, const SymbolTable* table = nullptr,
    const std::string& filename = "") {
  std::vector<LanguageProfile> profiles;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
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
    if (cols.size() != 7)
      throw ParseError("expected 7 tab-separated columns, got " +
                           std::to_string(cols.size()),
                       lineno, filename);
    LanguageProfile profile;
    profile.name = cols[0];
    try {
      profile.group = std::stoi(cols[1]);
    } catch (...) {
      throw ParseError("bad group '" + cols[1] + "'", lineno, filename);
    }
    if (profile.group < 1 || profile.group > kGroupCount)
      throw ParseError("group out of range for '" + profile.name + "'", lineno,
                       filename);
    if (const LanguageInfo* info = find_language(profile.name))
      if (info->group != profile.group)
        throw ParseError("group mismatch for '" + profile.name + "': file says " +
                             cols[1] + ", expected " +
                             std::to_string(info->group),
                         lineno, filename);
    profile.region = cols[2];
    profile.family = cols[3];

    long declared = 0;
    try {
      declared = std::stol(cols[4]);
    } catch (...) {
      throw ParseError("bad count '" + cols[4] + "'", lineno, filename);
    }
    for (const auto& tok : detail::split_ws(cols[5])) {
      if (table) {
        const Phone* p = table->find(tok);
        if (!p)
          throw ParseError("unknown phone '" + tok + "' in inventory of '" +
                               profile.name + "'",
                           lineno, filename);
        if (p->is_boundary())
          throw ParseError("boundary in inventory of '" + profile.name + "'",
                           lineno, filename);
      }
      profile.inventory.insert(tok);
    }
    if (static_cast<long>(profile.inventory.size()) != declared)
      throw ParseError("phoneme count mismatch for '" + profile.name +
                           "': declared " + std::to_string(declared) +
                           ", listed " +
                           std::to_string(profile.inventory.size()),
                       lineno, filename);
    for (const auto& tag : detail::split_commas(cols[6])) {
      if (!known_characteristics().count(tag))
        throw ParseError("unknown characteristic tag '" + tag + "' for '" +
                             profile.name + "'",
                         lineno, filename);
      profile.characteristics.insert(tag);
    }
    profiles.push_back(std::move(profile));
  }
  return profiles;
}

inline std::vector<LanguageProfile> load_profiles(
    const std::string& path, const SymbolTable* table = nullptr) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open profile file", 0, path);
  return load_profiles(in, table, path);
}

/// Number of languages whose inventory contains each phone; the domain is
/// the union of all inventories.
inline std::map<std::string, int> phoneme_frequencies(
    const std::vector<LanguageProfile>& profiles) {
  std::map<std::string, int> freq;
  for (const auto& p : profiles)
    for (const auto& phone : p.inventory) ++freq[phone];
  return freq;
}

enum class Tier { kHigh, kMid, kLow };

inline const char* tier_name(Tier t) {
  switch (t) {
    case Tier::kHigh: return "high";
    case Tier::kMid: return "mid";
    case Tier::kLow: return "low";
  }
  return "?";
}

/// Percentile-ranked prevalence report. Thresholds are nearest-rank
/// percentiles of the frequency multiset (the smallest value with at least
/// p% of the multiset at or below it). high: freq >= t_high;
/// mid: t_mid <= freq < t_high; low: freq < t_mid. Universal phones occur
/// in every language.
struct TierReport {
  std::map<std::string, int> frequencies;
  std::map<std::string, Tier> tiers;
  int t_high = 0;
  int t_mid = 0;
  double p_high = 0.0;
  double p_mid = 0.0;
  std::set<std::string> universal_phones;
};

/// Nearest-rank percentile over an ascending-sorted multiset.
inline int nearest_rank_percentile(const std::vector<int>& sorted_asc,
                                   double percentile) {
  const std::size_t n = sorted_asc.size();
  std::size_t rank = static_cast<std::size_t>(
      std::ceil(percentile * static_cast<double>(n) / 100.0));
  if (rank < 1) rank = 1;
  if (rank > n) rank = n;
  return sorted_asc[rank - 1];
}

inline TierReport tier_assignment(const std::map<std::string, int>& frequencies,
                                  std::size_t language_count,
                                  double p_high = 66.7, double p_mid = 33.3) {
  if (frequencies.empty()) throw Error("empty frequency map");
  TierReport report;
  report.frequencies = frequencies;
  report.p_high = p_high;
  report.p_mid = p_mid;

  std::vector<int> values;
  values.reserve(frequencies.size());
  for (const auto& [phone, f] : frequencies) values.push_back(f);
  std::sort(values.begin(), values.end());
  report.t_high = nearest_rank_percentile(values, p_high);
  report.t_mid = nearest_rank_percentile(values, p_mid);

  for (const auto& [phone, f] : frequencies) {
    Tier tier = f >= report.t_high ? Tier::kHigh
                : f >= report.t_mid ? Tier::kMid
                                    : Tier::kLow;
    report.tiers.emplace(phone, tier);
    if (language_count > 0 && f == static_cast<int>(language_count))
      report.universal_phones.insert(phone);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Rule validation against native-language characteristics
// ---------------------------------------------------------------------------

enum class Verdict { kUniversal, kRegional, kDiscarded, kUnsupported };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kUniversal: return "universal";
    case Verdict::kRegional: return "regional";
    case Verdict::kDiscarded: return "discarded";
    case Verdict::kUnsupported: return "unsupported";
  }
  return "?";
}

struct RuleVerdict {
  std::string rule_id;
  Verdict verdict = Verdict::kUnsupported;
  std::set<int> groups;  // populated for regional verdicts
  std::string tag;
  int supporting_languages = 0;
};

/// A rule is universal when at least ceil(universal_fraction * languages)
/// languages bear its supporting characteristic, regional when support is
/// confined to at most max_regional_groups groups. Both bounds are
/// documented defaults of this toolkit, not published constants.
struct ValidatorConfig {
  double universal_fraction = 2.0 / 3.0;
  int max_regional_groups = 2;
};

class RuleValidator {
 public:
  RuleValidator(std::vector<LanguageProfile> profiles,
                std::set<std::string> discard_ids = {},
                ValidatorConfig config = {})
      : profiles_(std::move(profiles)),
        discard_ids_(std::move(discard_ids)),
        config_(config) {}

  const std::vector<LanguageProfile>& profiles() const { return profiles_; }

  /// Verdict for one rule given its declared supporting characteristic.
  /// Rules in the discard fixture are discarded regardless of support, as
  /// is a rule with no supporting language. Verdicts do not depend on
  /// profile order.
  RuleVerdict validate(const RewriteRule& rule, const std::string& tag) const {
    RuleVerdict verdict;
    verdict.rule_id = rule.id;
    verdict.tag = tag;
    if (discard_ids_.count(rule.id) || rule.status == RuleStatus::kDiscarded) {
      verdict.verdict = Verdict::kDiscarded;
      return verdict;
    }
    if (!tag.empty() && !known_characteristics().count(tag))
      throw Error("unknown characteristic tag '" + tag + "'");

    std::set<int> groups;
    int supporting = 0;
    if (!tag.empty())
      for (const auto& p : profiles_)
        if (p.characteristics.count(tag)) {
          ++supporting;
          groups.insert(p.group);
        }
    verdict.supporting_languages = supporting;

    const int universal_min = static_cast<int>(std::ceil(
        config_.universal_fraction * static_cast<double>(profiles_.size())));
    if (supporting == 0) {
      verdict.verdict = Verdict::kDiscarded;
    } else if (supporting >= universal_min) {
      verdict.verdict = Verdict::kUniversal;
    } else if (static_cast<int>(groups.size()) <= config_.max_regional_groups) {
      verdict.verdict = Verdict::kRegional;
      verdict.groups = groups;
    } else {
      verdict.verdict = Verdict::kUnsupported;
    }
    return verdict;
  }

 private:
  std::vector<LanguageProfile> profiles_;
  std::set<std::string> discard_ids_;
  ValidatorConfig config_;
};

// ---------------------------------------------------------------------------
// Verdict fixtures
// ---------------------------------------------------------------------------

struct ExpectedVerdict {
  Verdict verdict = Verdict::kUnsupported;
  std::set<int> groups;

  bool matches(const RuleVerdict& v) const {
    if (verdict != v.verdict) return false;
    if (verdict == Verdict::kRegional && groups != v.groups) return false;
    return true;
  }
};

inline ExpectedVerdict parse_expected_verdict(const std::string& text,
                                              std::size_t lineno = 0,
                                              const std::string& file = "") {
  ExpectedVerdict expected;
  if (text == "universal") {
    expected.verdict = Verdict::kUniversal;
  } else if (text == "discarded") {
    expected.verdict = Verdict::kDiscarded;
  } else if (text == "unsupported") {
    expected.verdict = Verdict::kUnsupported;
  } else if (text.rfind("regional", 0) == 0) {
    expected.verdict = Verdict::kRegional;
    auto colon = text.find(':');
    if (colon != std::string::npos)
      for (const auto& g : detail::split_commas(text.substr(colon + 1)))
        expected.groups.insert(detail::parse_group_id(g, lineno, file));
  } else {
    throw ParseError("bad verdict '" + text + "'", lineno, file);
  }
  return expected;
}

/// The expected verdict per rule id of the shipped rule tables, as
/// established by the validation study. Static data used by the acceptance
/// suite and the default for `validate --fixture`.
inline const std::map<std::string, ExpectedVerdict>& paper_verdict_fixture() {
  static const std::map<std::string, ExpectedVerdict> kFixture = [] {
    std::map<std::string, ExpectedVerdict> m;
    auto uni = [] { return ExpectedVerdict{Verdict::kUniversal, {}}; };
    auto dis = [] { return ExpectedVerdict{Verdict::kDiscarded, {}}; };
    auto south = [] { return ExpectedVerdict{Verdict::kRegional, {4, 5}}; };
    m["c1r1"] = uni();
    m["c1r2"] = uni();
    m["c1r3a"] = uni();
    m["c1r3b"] = uni();
    m["c1r4a"] = south();
    m["c1r4b"] = uni();
    m["c1r5"] = uni();
    m["c1r6"] = dis();
    m["c1r7"] = south();
    m["c1r8"] = uni();
    m["c2r1"] = uni();
    m["c2r2"] = uni();
    m["c2r3"] = dis();
    m["c2r4"] = dis();
    m["c2r5"] = dis();
    m["c2r6"] = dis();
    m["c2r7"] = dis();
    m["c2r8"] = dis();
    m["c3r1"] = dis();
    m["c3r2"] = dis();
    m["c3r3"] = dis();
    m["c3r4"] = dis();
    m["c3r5"] = uni();
    m["c3r6"] = uni();
    m["c3r7"] = uni();
    return m;
  }();
  return kFixture;
}

/// Loads a verdict fixture file: `rule_id TAB verdict`, '#' comments.
inline std::map<std::string, ExpectedVerdict> load_verdict_fixture(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open verdict fixture", 0, path);
  std::map<std::string, ExpectedVerdict> fixture;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError("expected rule_id TAB verdict", lineno, path);
    fixture[detail::trim(line.substr(0, tab))] =
        parse_expected_verdict(detail::trim(line.substr(tab + 1)), lineno,
                               path);
  }
  return fixture;
}

/// Loads the rule -> supporting characteristic map:
/// `rule_id TAB characteristic`, '#' comments.
inline std::map<std::string, std::string> load_rule_tags(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open rule tag map", 0, path);
  std::map<std::string, std::string> tags;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError("expected rule_id TAB characteristic", lineno, path);
    tags[detail::trim(line.substr(0, tab))] =
        detail::trim(line.substr(tab + 1));
  }
  return tags;
}

}  // namespace accentforge

#endif  // ACCENTFORGE_INVENTORY_HPP_
