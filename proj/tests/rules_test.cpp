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

#include "accentforge/rules.hpp"

#include <sstream>

#include "catch2/catch_amalgamated.hpp"
#include "test_util.hpp"

using namespace accentforge;

namespace {

RuleSet parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_rules(in, testutil::default_table(), "<test>");
}

const RuleSet& golden() {
  static const RuleSet rs =
      parse_rule_file(testutil::data_path("table1.rules"),
                      testutil::default_table());
  return rs;
}

std::string slot_of(const std::string& id) {
  std::string slot = id;
  while (!slot.empty() && slot.back() >= 'a' && slot.back() <= 'z')
    slot.pop_back();
  return slot;
}

}  // namespace

TEST_CASE("rule DSL parses the documented forms") {
  SECTION("plain substitution") {
    RuleSet rs = parse_text("rule c1r5: D -> d_d ;\n");
    REQUIRE(rs.rules.size() == 1);
    const RewriteRule& r = rs.rules[0];
    CHECK(r.id == "c1r5");
    CHECK(r.source == PhoneSeq{"D"});
    CHECK(r.target == PhoneSeq{"d_d"});
    CHECK(r.scope.kind == RuleScope::Kind::kUniversal);
    CHECK(r.status == RuleStatus::kActive);
  }
  SECTION("category and *all language scope") {
    RuleSet rs = parse_text("rule c1r7 [cat:1] [lang: *all]: z -> s ;\n");
    REQUIRE(rs.rules.size() == 1);
    CHECK(rs.rules[0].category == 1);
    CHECK(rs.rules[0].scope.kind == RuleScope::Kind::kLanguages);
    CHECK(rs.rules[0].scope.all_languages);
  }
  SECTION("scope spellings are equivalent") {
    RuleSet a = parse_text("rule x [scope: groups g1,g4]: t -> tt ;\n");
    RuleSet b = parse_text("rule x [groups: g1,g4]: t -> tt ;\n");
    CHECK(a.rules[0].scope.groups == b.rules[0].scope.groups);
    RuleSet c = parse_text("rule x [scope: lang Tamil,Telugu]: z -> s ;\n");
    RuleSet d = parse_text("rule x [lang: Tamil,Telugu]: z -> s ;\n");
    CHECK(c.rules[0].scope.languages == d.rules[0].scope.languages);
  }
  SECTION("contexts") {
    RuleSet rs = parse_text("rule f [cat:3]: n -> @ n / _ # ;\n");
    CHECK(!rs.rules[0].left_ctx.has_value());
    REQUIRE(rs.rules[0].right_ctx.has_value());
    CHECK(*rs.rules[0].right_ctx == "#");

    RuleSet both = parse_text("rule g: a -> e / k _ # ;\n");
    CHECK(*both.rules[0].left_ctx == "k");
    CHECK(*both.rules[0].right_ctx == "#");
  }
  SECTION("insertion with context") {
    RuleSet rs = parse_text("rule ins: -> @ / # _ l ;\n");
    CHECK(rs.rules[0].source.empty());
    CHECK(rs.rules[0].target == PhoneSeq{"@"});
  }
  SECTION("deletion with unresolved status") {
    RuleSet rs = parse_text("rule del [status: unresolved]: @U -> ;\n");
    CHECK(rs.rules[0].target.empty());
    CHECK(rs.rules[0].status == RuleStatus::kUnresolved);
  }
  SECTION("comments and blank lines are skipped") {
    RuleSet rs = parse_text("# comment\n\nrule a: E -> e ;\n");
    CHECK(rs.rules.size() == 1);
  }
}

TEST_CASE("rule DSL rejects malformed input") {
  CHECK_THROWS_AS(parse_text("rule bad: -> ;\n"), ParseError);
  CHECK_THROWS_AS(parse_text("rule bad: zz9 -> s ;\n"), ParseError);  // symbol
  CHECK_THROWS_AS(parse_text("rule bad: E -> e \n"), ParseError);     // no ';'
  CHECK_THROWS_AS(parse_text("rule bad E -> e ;\n"), ParseError);     // no ':'
  CHECK_THROWS_AS(parse_text("rule bad: -> @ ;\n"), ParseError);  // ins, no ctx
  CHECK_THROWS_AS(parse_text("rule a: E -> e ;\nrule a: V -> @ ;\n"),
                  ParseError);  // duplicate id
  CHECK_THROWS_AS(parse_text("rule bad [scope: nowhere]: E -> e ;\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_text("rule bad: E -> # ;\n"), ParseError);  // boundary
}

TEST_CASE("golden rule file covers the published table") {
  const RuleSet& rs = golden();
  // 24 slots; slots 3 and 4 of category 1 hold two rules, slot 8 of
  // category 3 lists five unresolved sources.
  CHECK(rs.rules.size() == 30);

  std::set<std::string> slots;
  std::map<int, std::set<std::string>> slots_by_cat;
  std::size_t unresolved = 0;
  for (const auto& r : rs.rules) {
    slots.insert(slot_of(r.id));
    slots_by_cat[r.category].insert(slot_of(r.id));
    if (r.status == RuleStatus::kUnresolved) ++unresolved;
  }
  CHECK(slots.size() == 24);
  CHECK(slots_by_cat[1].size() == 8);
  CHECK(slots_by_cat[2].size() == 8);
  CHECK(slots_by_cat[3].size() == 8);
  CHECK(unresolved == 5);

  // Identities are unique: every cell appears exactly once.
  std::set<std::string> identities;
  for (const auto& r : rs.rules) identities.insert(r.identity());
  CHECK(identities.size() == rs.rules.size());
}

TEST_CASE("select filters by scope") {
  const RuleSet& rs = golden();

  SECTION("empty query returns the universal active rules") {
    RuleSet sel = select(rs, {});
    CHECK(sel.rules.size() == 19);
    for (const auto& r : sel.rules) {
      CHECK(r.scope.kind == RuleScope::Kind::kUniversal);
      CHECK(r.status == RuleStatus::kActive);
    }
  }
  SECTION("Tamil query includes the voicing interchange rule") {
    SelectQuery query;
    query.languages = {"Tamil"};
    RuleSet sel = select(rs, query);
    CHECK(sel.find("c1r7") != nullptr);   // lang: Tamil,...
    CHECK(sel.find("c1r4a") != nullptr);  // groups g4,g5 covers Tamil's group
    CHECK(sel.find("c1r8") != nullptr);   // lang: *all
    CHECK(sel.find("c3r4") == nullptr);   // Gujarati/Marathi only
    CHECK(sel.find("c1r1") != nullptr);   // universal always included
  }
  SECTION("region query covers language-scoped rules of that region") {
    SelectQuery query;
    query.regions = {4};
    RuleSet sel = select(rs, query);
    CHECK(sel.find("c3r2") != nullptr);  // Telugu, group 4
    CHECK(sel.find("c3r3") == nullptr);  // Oriya/Bengali/Assamese, group 1
  }
  SECTION("unknown names are rejected") {
    SelectQuery query;
    query.languages = {"Klingon"};
    CHECK_THROWS_AS(select(rs, query), Error);
    SelectQuery bad_group;
    bad_group.regions = {9};
    CHECK_THROWS_AS(select(rs, bad_group), Error);
  }
  SECTION("category filter") {
    SelectQuery query;
    query.categories = {1};
    RuleSet sel = select(rs, query);
    for (const auto& r : sel.rules) CHECK(r.category == 1);
  }
  SECTION("unresolved rules only appear when asked for") {
    SelectQuery query;
    query.statuses = {RuleStatus::kUnresolved};
    RuleSet sel = select(rs, query);
    CHECK(sel.rules.size() == 5);
  }
}

TEST_CASE("select is monotone: adding a language never drops a rule") {
  const RuleSet& rs = golden();
  const char* languages[] = {"Tamil", "Telugu", "Gujarati", "Bengali", "Hindi",
                             "Mog"};
  SelectQuery query;
  std::set<std::string> previous_ids;
  for (const char* lang : languages) {
    query.languages.insert(lang);
    RuleSet sel = select(rs, query);
    std::set<std::string> ids;
    for (const auto& r : sel.rules) ids.insert(r.id);
    for (const auto& id : previous_ids) {
      INFO("after adding " << lang << ", rule " << id);
      CHECK(ids.count(id) == 1);
    }
    previous_ids = std::move(ids);
  }
}

TEST_CASE("compile keeps exactly the active rules in order") {
  SECTION("empty rule set compiles to nothing") {
    CompiledRuleSet crs = compile(RuleSet{});
    CHECK(crs.size() == 0);
  }
  SECTION("golden file: active rule count") {
    CompiledRuleSet crs = compile(golden());
    CHECK(crs.size() == 25);  // 30 rules minus 5 unresolved
  }
  SECTION("decompile preserves the active-rule list in order") {
    CompiledRuleSet crs = compile(golden());
    std::vector<std::string> expect;
    for (const auto& r : golden().rules)
      if (r.status == RuleStatus::kActive) expect.push_back(r.id);
    std::vector<std::string> got;
    for (const auto& r : crs.rules()) got.push_back(r.id);
    CHECK(got == expect);
  }
  SECTION("rules with identical sources are both retained, in file order") {
    RuleSet rs = parse_text(
        "rule one: T -> t_d ;\n"
        "rule two: T -> t_dh ;\n");
    CompiledRuleSet crs = compile(rs);
    REQUIRE(crs.size() == 2);
    const auto* cands = crs.candidates("T");
    REQUIRE(cands != nullptr);
    REQUIRE(cands->size() == 2);
    CHECK(crs.rules()[(*cands)[0]].id == "one");
    CHECK(crs.rules()[(*cands)[1]].id == "two");
  }
}

TEST_CASE("emit_rules round-trips through the parser") {
  const RuleSet& rs = golden();
  std::ostringstream out;
  emit_rules(rs, out);
  RuleSet reparsed = parse_text(out.str());
  REQUIRE(reparsed.rules.size() == rs.rules.size());
  for (std::size_t i = 0; i < rs.rules.size(); ++i) {
    CHECK(reparsed.rules[i].id == rs.rules[i].id);
    CHECK(reparsed.rules[i].identity() == rs.rules[i].identity());
    CHECK(reparsed.rules[i].category == rs.rules[i].category);
    CHECK(reparsed.rules[i].status == rs.rules[i].status);
  }
}
