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

#include "accentforge/inventory.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "catch2/catch_amalgamated.hpp"
#include "test_util.hpp"

using namespace accentforge;

namespace {

const std::vector<LanguageProfile>& curated() {
  static const std::vector<LanguageProfile> profiles = load_profiles(
      testutil::data_path("profiles.tsv"), &testutil::default_table());
  return profiles;
}

const LanguageProfile* find_profile(const std::string& name) {
  for (const auto& p : curated())
    if (p.name == name) return &p;
  return nullptr;
}

}  // namespace

TEST_CASE("curated profiles match the published table") {
  const auto& profiles = curated();
  REQUIRE(profiles.size() == 18);

  const LanguageProfile* tamil = find_profile("Tamil");
  REQUIRE(tamil != nullptr);
  CHECK(tamil->group == 5);
  CHECK(tamil->family == "Dravidian");
  CHECK(tamil->inventory.size() == 37);
  CHECK(tamil->characteristics.count("no_voiced_consonants") == 1);
  CHECK(tamil->characteristics.count("vowel_length_distinction") == 1);

  const std::map<std::string, std::size_t> expected_counts = {
      {"Dimasa", 21},  {"Mog", 36},      {"Maithili", 56}, {"Oriya", 49},
      {"Bengali", 47}, {"Assamese", 40}, {"Nepali", 46},   {"Punjabi", 51},
      {"Marwari", 50}, {"Hindi", 55},    {"Malwi", 46},    {"Gujarati", 47},
      {"Marathi", 48}, {"Konkani", 55},  {"Kannada", 50},  {"Telugu", 55},
      {"Malayalam", 54}, {"Tamil", 37}};
  for (const auto& [name, count] : expected_counts) {
    const LanguageProfile* p = find_profile(name);
    REQUIRE(p != nullptr);
    INFO(name);
    CHECK(p->inventory.size() == count);
  }
}

TEST_CASE("load_profiles validates its input") {
  SECTION("empty file gives an empty list") {
    std::istringstream in("");
    CHECK(load_profiles(in).empty());
  }
  SECTION("count mismatch names the language") {
    std::istringstream in("Tamil\t5\tLower South\tDravidian\t3\ta i\t\n");
    try {
      load_profiles(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("Tamil") != std::string::npos);
    }
  }
  SECTION("unknown tag is rejected") {
    std::istringstream in(
        "Tamil\t5\tLower South\tDravidian\t2\ta i\tglottal_hum\n");
    CHECK_THROWS_AS(load_profiles(in), ParseError);
  }
  SECTION("group mismatch for a known language is rejected") {
    std::istringstream in("Tamil\t2\tLower South\tDravidian\t2\ta i\t\n");
    CHECK_THROWS_AS(load_profiles(in), ParseError);
  }
}

TEST_CASE("phoneme_frequencies counts languages per phone") {
  SECTION("toy profiles") {
    std::vector<LanguageProfile> profiles(2);
    profiles[0].inventory = {"a", "b"};
    profiles[1].inventory = {"b", "c"};
    auto freq = phoneme_frequencies(profiles);
    CHECK(freq.size() == 3);
    CHECK(freq["a"] == 1);
    CHECK(freq["b"] == 2);
    CHECK(freq["c"] == 1);
  }
  SECTION("curated dataset: 70 phones, 9 in all languages, 2 of them vowels") {
    auto freq = phoneme_frequencies(curated());
    CHECK(freq.size() == 70);
    std::size_t universal = 0, universal_vowels = 0;
    for (const auto& [phone, count] : freq) {
      if (count == 18) {
        ++universal;
        const Phone* p = testutil::default_table().find(phone);
        REQUIRE(p != nullptr);
        if (p->is_vowel()) ++universal_vowels;
      }
    }
    CHECK(universal == 9);
    CHECK(universal_vowels == 2);
  }
}

TEST_CASE("tier_assignment nearest-rank thresholds") {
  SECTION("nine distinct frequencies, worked by hand") {
    // Sorted multiset {1..9}: rank ceil(.667*9)=7 -> 7, ceil(.333*9)=3 -> 3.
    std::map<std::string, int> freq;
    for (int i = 1; i <= 9; ++i) freq["p" + std::to_string(i)] = i;
    TierReport report = tier_assignment(freq, 9);
    CHECK(report.t_high == 7);
    CHECK(report.t_mid == 3);
    for (int i = 1; i <= 9; ++i) {
      Tier t = report.tiers.at("p" + std::to_string(i));
      if (i >= 7) CHECK(t == Tier::kHigh);
      else if (i >= 3) CHECK(t == Tier::kMid);
      else CHECK(t == Tier::kLow);
    }
  }
  SECTION("degenerate: every phone in every language") {
    std::map<std::string, int> freq = {{"a", 18}, {"b", 18}, {"c", 18}};
    TierReport report = tier_assignment(freq, 18);
    CHECK(report.t_high == 18);
    for (const auto& [phone, tier] : report.tiers) CHECK(tier == Tier::kHigh);
    CHECK(report.universal_phones.size() == 3);
  }
  SECTION("single profile makes every phone universal") {
    std::map<std::string, int> freq = {{"a", 1}, {"b", 1}};
    TierReport report = tier_assignment(freq, 1);
    CHECK(report.universal_phones.size() == 2);
  }
  SECTION("curated dataset reproduces the 16/10 cut points") {
    auto freq = phoneme_frequencies(curated());
    TierReport report = tier_assignment(freq, curated().size());
    CHECK(report.t_high == 16);
    CHECK(report.t_mid == 10);
    CHECK(report.universal_phones.size() == 9);
    // Universal phones always land in the high tier.
    for (const auto& p : report.universal_phones)
      CHECK(report.tiers.at(p) == Tier::kHigh);
  }
}

TEST_CASE("tier_assignment equals the brute-force oracle on random input") {
  std::mt19937 rng(20260810);
  std::uniform_int_distribution<int> size_dist(1, 200);
  std::uniform_int_distribution<int> freq_dist(1, 40);
  std::uniform_real_distribution<double> pct(1.0, 99.0);
  for (int trial = 0; trial < 300; ++trial) {
    int n = size_dist(rng);
    std::map<std::string, int> freq;
    std::vector<int> values;
    for (int i = 0; i < n; ++i) {
      int f = freq_dist(rng);
      freq["p" + std::to_string(i)] = f;
      values.push_back(f);
    }
    double p_high = pct(rng), p_mid = pct(rng);
    TierReport report = tier_assignment(freq, 40, p_high, p_mid);
    CHECK(report.t_high == testutil::nearest_rank_oracle(values, p_high));
    CHECK(report.t_mid == testutil::nearest_rank_oracle(values, p_mid));
  }
}

TEST_CASE("validate_rule classifies against characteristics") {
  RuleValidator validator(curated(), /*discard_ids=*/{"c2r3"});

  RewriteRule stop_rule;
  stop_rule.id = "c1r3b";
  stop_rule.source = {"t"};
  stop_rule.target = {"tt"};

  SECTION("widely shared characteristic gives a universal verdict") {
    RuleVerdict v = validator.validate(stop_rule, "retroflex_stop_series");
    CHECK(v.verdict == Verdict::kUniversal);
    CHECK(v.supporting_languages == 15);
  }
  SECTION("support confined to two groups gives a regional verdict") {
    RewriteRule voicing;
    voicing.id = "c1r7";
    voicing.source = {"z"};
    voicing.target = {"s"};
    RuleVerdict v = validator.validate(voicing, "intervocalic_voicing");
    CHECK(v.verdict == Verdict::kRegional);
    CHECK(v.groups == std::set<int>{4, 5});
  }
  SECTION("discard fixture wins over a supported tag") {
    RewriteRule pal;
    pal.id = "c2r3";
    pal.source = {"y", "U"};
    pal.target = {"u"};
    RuleVerdict v = validator.validate(pal, "consonant_palatalisation");
    CHECK(v.verdict == Verdict::kDiscarded);
  }
  SECTION("no supporting language means discarded") {
    RuleVerdict v = validator.validate(stop_rule, "");
    CHECK(v.verdict == Verdict::kDiscarded);
  }
  SECTION("supported but spread over many groups is unsupported") {
    // vowel_length_distinction spans groups 3, 4 and 5 with 5 languages.
    RuleVerdict v = validator.validate(stop_rule, "vowel_length_distinction");
    CHECK(v.verdict == Verdict::kUnsupported);
  }
  SECTION("unknown tag raises") {
    CHECK_THROWS_AS(validator.validate(stop_rule, "glottal_hum"), Error);
  }
  SECTION("verdicts do not depend on profile order") {
    std::vector<LanguageProfile> shuffled = curated();
    std::mt19937 rng(3);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    RuleValidator reordered(shuffled, {"c2r3"});
    for (const char* tag :
         {"retroflex_stop_series", "intervocalic_voicing",
          "non_phonemic_aspiration", "tense_vowel_inventory"}) {
      RuleVerdict a = validator.validate(stop_rule, tag);
      RuleVerdict b = reordered.validate(stop_rule, tag);
      CHECK(a.verdict == b.verdict);
      CHECK(a.groups == b.groups);
    }
  }
}

TEST_CASE("curated data reproduces the verdict fixture") {
  const SymbolTable& table = testutil::default_table();
  RuleSet golden = parse_rule_file(testutil::data_path("table1.rules"), table);
  RuleSet discarded =
      parse_rule_file(testutil::data_path("discarded.rules"), table);
  auto tags = load_rule_tags(testutil::data_path("rule_tags.tsv"));

  std::set<std::string> discard_ids;
  for (const auto& r : discarded.rules) discard_ids.insert(r.id);
  RuleValidator validator(curated(), discard_ids);

  const auto& fixture = paper_verdict_fixture();
  for (const auto& rule : golden.rules) {
    if (rule.status == RuleStatus::kUnresolved) continue;
    auto expected = fixture.find(rule.id);
    REQUIRE(expected != fixture.end());
    auto tag_it = tags.find(rule.id);
    RuleVerdict v = validator.validate(
        rule, tag_it == tags.end() ? "" : tag_it->second);
    INFO(rule.id << " expected " << verdict_name(expected->second.verdict)
                 << " got " << verdict_name(v.verdict));
    CHECK(expected->second.matches(v));
  }

  // The file fixture mirrors the embedded one.
  auto file_fixture =
      load_verdict_fixture(testutil::data_path("paper_verdicts.tsv"));
  CHECK(file_fixture.size() == fixture.size());
  for (const auto& [id, expected] : fixture) {
    auto it = file_fixture.find(id);
    REQUIRE(it != file_fixture.end());
    CHECK(it->second.verdict == expected.verdict);
    CHECK(it->second.groups == expected.groups);
  }
}
