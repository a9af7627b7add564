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

// accentforge: batch front end for the rewrite engine and the analytics.
//
// Subcommands: adapt, mine, tiers, validate, kappa, convert.
// Exit codes: 0 success, 1 input error, 2 mapping error, 3 fixture mismatch.
// The fixture directory defaults to the compiled-in data directory and can
// be overridden with the ACCENTFORGE_DATA environment variable.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "accentforge/accentforge.hpp"

namespace af = accentforge;
using nlohmann::json;

#ifndef ACCENTFORGE_DEFAULT_DATA_DIR
#define ACCENTFORGE_DEFAULT_DATA_DIR "data"
#endif

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitMapping = 2;
constexpr int kExitFixture = 3;

std::string data_dir() {
  if (const char* env = std::getenv("ACCENTFORGE_DATA"))
    if (*env) return env;
  return ACCENTFORGE_DEFAULT_DATA_DIR;
}

std::string data_path(const std::string& name) {
  return data_dir() + "/" + name;
}

af::SymbolSet require_set(const std::string& name) {
  auto set = af::parse_symbol_set(name);
  if (!set) throw af::Error("unknown phone set '" + name + "'");
  return *set;
}

// --scope values: "universal", "lang:Tamil[,Telugu]", "group:4[,5]"
af::SelectQuery parse_scope(const std::string& scope) {
  af::SelectQuery query;
  if (scope.empty() || scope == "universal") return query;
  auto colon = scope.find(':');
  if (colon == std::string::npos)
    throw af::Error("bad --scope '" + scope + "' (universal|lang:X|group:N)");
  std::string kind = scope.substr(0, colon);
  std::string value = scope.substr(colon + 1);
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (kind == "lang" || kind == "language") {
      query.languages.insert(item);
    } else if (kind == "group" || kind == "region") {
      if (!item.empty() && (item[0] == 'g' || item[0] == 'G'))
        item = item.substr(1);
      query.regions.insert(std::stoi(item));
    } else {
      throw af::Error("bad --scope kind '" + kind + "'");
    }
  }
  return query;
}

af::RuleSet load_rule_files(const std::vector<std::string>& paths,
                            const af::SymbolTable& table) {
  if (paths.empty())
    return af::parse_rule_file(data_path("table1.rules"), table);
  af::RuleSet merged;
  for (const auto& path : paths) {
    af::RuleSet rs = af::parse_rule_file(path, table);
    if (merged.name.empty()) merged.name = rs.name;
    for (auto& r : rs.rules) merged.rules.push_back(std::move(r));
  }
  return merged;
}

json trace_to_json(const std::string& word, const af::RewriteTrace& trace) {
  json steps = json::array();
  for (const auto& step : trace.steps) {
    steps.push_back({{"rule", step.rule_id},
                     {"start", step.start},
                     {"end", step.end},
                     {"source", af::join(step.source)},
                     {"target", af::join(step.target)}});
  }
  return json{{"word", word}, {"steps", steps}};
}

int cmd_adapt(const std::string& lexicon_path, const std::string& table_path,
              const std::vector<std::string>& rule_paths,
              const std::string& scope, const std::string& out_path,
              const std::string& from_set, const std::string& to_set,
              const std::string& trace_path, bool lenient) {
  const af::ParseMode mode =
      lenient ? af::ParseMode::kLenient : af::ParseMode::kStrict;
  af::SymbolTable table = af::SymbolTable::load(table_path);
  af::RuleSet rules = load_rule_files(rule_paths, table);
  af::CompiledRuleSet crs = af::compile(af::select(rules, parse_scope(scope)));

  af::LexiconLoad load =
      af::load_lexicon(lexicon_path, require_set(from_set), table, mode);
  if (load.warnings > 0)
    std::cerr << "warning: " << load.warnings << " issue(s) while loading "
              << lexicon_path << "\n";

  const bool want_trace = !trace_path.empty();
  af::AdaptResult result = af::adapt_lexicon(load.lexicon, crs, want_trace);

  std::size_t emit_warnings = 0;
  if (out_path.empty()) {
    af::emit_lexicon(result.lexicon, require_set(to_set), table, std::cout,
                     mode, &emit_warnings);
  } else {
    af::emit_lexicon(result.lexicon, require_set(to_set), table, out_path,
                     mode, &emit_warnings);
  }
  if (emit_warnings > 0)
    std::cerr << "warning: " << emit_warnings
              << " phone(s) passed through unmapped\n";

  if (want_trace) {
    std::ofstream trace_out(trace_path);
    if (!trace_out) throw af::Error("cannot write trace to " + trace_path);
    for (std::size_t i = 0; i < result.traces.size(); ++i)
      trace_out << trace_to_json(result.lexicon.entries[i].word,
                                 result.traces[i])
                << "\n";
  }
  std::cerr << "adapted " << result.stats.entries << " entries ("
            << result.stats.changed << " changed, "
            << result.stats.rule_applications << " rule applications)\n";
  return kExitOk;
}

int cmd_mine(const std::string& pairs_path, const std::string& table_path,
             double theta, const std::string& literature_path,
             const std::string& out_path, bool contextual) {
  af::SymbolTable table = af::SymbolTable::load(table_path);
  std::vector<af::TranscriptPair> pairs = af::load_pairs(pairs_path, table);
  if (pairs.empty())
    std::cerr << "warning: empty pair corpus\n";

  std::vector<af::CandidateOccurrence> occurrences;
  std::vector<af::PhoneSeq> corpus;
  corpus.reserve(pairs.size());
  for (const auto& pair : pairs) {
    af::Alignment alignment = af::align(pair.canonical, pair.annotated);
    auto occs = af::extract_candidates(alignment, pair);
    occurrences.insert(occurrences.end(), occs.begin(), occs.end());
    corpus.push_back(pair.canonical);
  }
  af::AggregateConfig config;
  config.theta = theta;
  config.granularity = contextual ? af::CandidateGranularity::kContextual
                                  : af::CandidateGranularity::kContextFree;
  std::size_t warnings = 0;
  auto accepted = af::aggregate(occurrences, corpus, config, &warnings);
  if (warnings > 0)
    std::cerr << "warning: " << warnings
              << " candidate(s) dropped (no opportunity)\n";

  af::RuleSet mined = af::candidates_to_rules(accepted);
  if (out_path.empty()) {
    af::emit_rules(mined, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw af::Error("cannot write " + out_path);
    af::emit_rules(mined, out);
  }
  std::cerr << "mined " << mined.rules.size() << " rule(s) from "
            << pairs.size() << " pair(s) at theta " << theta << "\n";

  if (!literature_path.empty()) {
    af::RuleSet literature = af::parse_rule_file(literature_path, table);
    af::CategoryPartition part = af::categorize(mined, literature);
    auto print_section = [&](const char* title, const af::RuleSet& rs) {
      std::cout << "[" << title << "] " << rs.rules.size() << " rule(s)\n";
      af::emit_rules(rs, std::cout);
    };
    print_section("category 1: mined and literature", part.cat1);
    print_section("category 2: mined only", part.cat2);
    print_section("category 3: literature only", part.cat3);
  }
  return kExitOk;
}

int cmd_tiers(const std::string& profiles_path, const std::string& table_path,
              double p_high, double p_mid, bool as_json) {
  af::SymbolTable table = af::SymbolTable::load(table_path);
  auto profiles = af::load_profiles(profiles_path, &table);
  if (profiles.empty()) throw af::Error("no profiles loaded");
  auto freq = af::phoneme_frequencies(profiles);
  af::TierReport report =
      af::tier_assignment(freq, profiles.size(), p_high, p_mid);

  if (as_json) {
    json j;
    j["languages"] = profiles.size();
    j["phones"] = freq.size();
    j["t_high"] = report.t_high;
    j["t_mid"] = report.t_mid;
    j["universal"] = report.universal_phones;
    json tiers;
    for (const auto& [phone, tier] : report.tiers)
      tiers[phone] = af::tier_name(tier);
    j["tiers"] = tiers;
    j["frequencies"] = report.frequencies;
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }

  std::cout << "languages: " << profiles.size() << "\n";
  std::cout << "phones: " << freq.size() << "\n";
  std::cout << "thresholds: high >= " << report.t_high << ", mid >= "
            << report.t_mid << " (percentiles " << p_high << "/" << p_mid
            << ")\n";
  std::cout << "universal (" << report.universal_phones.size() << "):";
  for (const auto& p : report.universal_phones) std::cout << " " << p;
  std::cout << "\n";
  for (const char* tier : {"high", "mid", "low"}) {
    std::cout << tier << ":";
    for (const auto& [phone, t] : report.tiers)
      if (std::string(af::tier_name(t)) == tier)
        std::cout << " " << phone << "(" << report.frequencies.at(phone)
                  << ")";
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_validate(const std::vector<std::string>& rule_paths,
                 const std::string& profiles_path,
                 const std::string& table_path, const std::string& tags_path,
                 const std::string& discard_path, bool check_fixture,
                 const std::string& fixture_path) {
  af::SymbolTable table = af::SymbolTable::load(table_path);
  auto profiles = af::load_profiles(profiles_path, &table);
  auto tags = af::load_rule_tags(tags_path);

  af::RuleSet golden = load_rule_files(rule_paths, table);
  af::RuleSet discarded = af::parse_rule_file(discard_path, table);
  std::set<std::string> discard_ids;
  for (const auto& r : discarded.rules) discard_ids.insert(r.id);

  af::RuleValidator validator(profiles, discard_ids);

  std::map<std::string, af::ExpectedVerdict> fixture;
  if (check_fixture) {
    fixture = fixture_path.empty() ? af::paper_verdict_fixture()
                                   : af::load_verdict_fixture(fixture_path);
  }

  int mismatches = 0;
  for (const auto& rule : golden.rules) {
    if (rule.status == af::RuleStatus::kUnresolved) {
      std::cout << rule.id << "\tunresolved\t(not validated)\n";
      continue;
    }
    auto tag_it = tags.find(rule.id);
    const std::string tag = tag_it == tags.end() ? "" : tag_it->second;
    af::RuleVerdict v = validator.validate(rule, tag);

    std::cout << rule.id << "\t" << af::verdict_name(v.verdict);
    if (v.verdict == af::Verdict::kRegional) {
      std::cout << ":";
      bool first = true;
      for (int g : v.groups) {
        if (!first) std::cout << ",";
        std::cout << g;
        first = false;
      }
    }
    if (!v.tag.empty())
      std::cout << "\t(" << v.tag << ": " << v.supporting_languages
                << " languages)";
    std::cout << "\n";

    if (check_fixture) {
      auto fix_it = fixture.find(rule.id);
      if (fix_it != fixture.end() && !fix_it->second.matches(v)) {
        std::cerr << "fixture mismatch: " << rule.id << " expected "
                  << af::verdict_name(fix_it->second.verdict) << ", got "
                  << af::verdict_name(v.verdict) << "\n";
        ++mismatches;
      }
    }
  }
  if (check_fixture && mismatches > 0) return kExitFixture;
  return kExitOk;
}

int cmd_kappa(const std::string& labels_path) {
  auto [a, b] = af::load_labels(labels_path);
  af::KappaResult result = af::cohens_kappa(a, b);
  std::cout << std::fixed << std::setprecision(6);
  std::cout << "kappa " << result.kappa << "\n";
  std::cout << "p_o " << result.p_o << "\n";
  std::cout << "p_e " << result.p_e << "\n";
  return kExitOk;
}

int cmd_convert(const std::string& tokens, const std::string& table_path,
                const std::string& from_set, const std::string& to_set,
                bool lenient) {
  const af::ParseMode mode =
      lenient ? af::ParseMode::kLenient : af::ParseMode::kStrict;
  af::SymbolTable table = af::SymbolTable::load(table_path);
  std::size_t warnings = 0;
  af::PhoneSeq seq =
      af::parse_phone_string(tokens, require_set(from_set), table, mode,
                             &warnings);
  std::cout << af::convert(seq, require_set(to_set), table, mode, &warnings)
            << "\n";
  if (warnings > 0)
    std::cerr << "warning: " << warnings << " token(s) passed through\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pronunciation rule engine and accent lexicon toolkit"};
  app.require_subcommand(1);

  std::string table_path = data_path("phones.tsv");
  app.add_option("--table", table_path, "Symbol table TSV")
      ->capture_default_str();

  // adapt
  auto* adapt = app.add_subcommand("adapt", "Rewrite a pronunciation lexicon");
  std::string adapt_lexicon, adapt_scope = "universal", adapt_out;
  std::string adapt_from = "arpabet", adapt_to = "cps", adapt_trace;
  std::vector<std::string> adapt_rules;
  bool adapt_lenient = false;
  adapt->add_option("lexicon", adapt_lexicon, "Input lexicon")->required();
  adapt->add_option("--rules", adapt_rules, "Rule file(s)");
  adapt->add_option("--scope", adapt_scope,
                    "universal | lang:Name[,..] | group:N[,..]")
      ->capture_default_str();
  adapt->add_option("--out", adapt_out, "Output path (default stdout)");
  adapt->add_option("--from-set", adapt_from, "Input phone set")
      ->capture_default_str();
  adapt->add_option("--to-set", adapt_to, "Output phone set")
      ->capture_default_str();
  adapt->add_option("--trace", adapt_trace, "Write JSON-lines trace here");
  adapt->add_flag("--lenient", adapt_lenient, "Skip/pass-through on errors");

  // mine
  auto* mine = app.add_subcommand("mine", "Mine rules from transcription pairs");
  std::string mine_pairs, mine_literature, mine_out;
  double mine_theta = 0.3;
  bool mine_contextual = false;
  mine->add_option("pairs", mine_pairs, "Pair corpus TSV")->required();
  mine->add_option("--theta", mine_theta, "Acceptance threshold on rate")
      ->capture_default_str();
  mine->add_option("--literature", mine_literature,
                   "Rule file to partition against");
  mine->add_option("--out", mine_out, "Mined rule output (default stdout)");
  mine->add_flag("--contextual", mine_contextual,
                 "Keep flanking contexts in candidate identity");

  // tiers
  auto* tiers = app.add_subcommand("tiers", "Phoneme prevalence tiers");
  std::string tiers_profiles = data_path("profiles.tsv");
  double p_high = 66.7, p_mid = 33.3;
  bool tiers_json = false;
  tiers->add_option("--profiles", tiers_profiles, "Profile TSV")
      ->capture_default_str();
  tiers->add_option("--p-high", p_high, "High-tier percentile")
      ->capture_default_str();
  tiers->add_option("--p-mid", p_mid, "Mid-tier percentile")
      ->capture_default_str();
  tiers->add_flag("--json", tiers_json, "JSON output");

  // validate
  auto* validate = app.add_subcommand(
      "validate", "Classify rules against language characteristics");
  std::vector<std::string> validate_rules;
  std::string validate_profiles = data_path("profiles.tsv");
  std::string validate_tags = data_path("rule_tags.tsv");
  std::string validate_discard = data_path("discarded.rules");
  std::string validate_fixture_path;
  bool validate_fixture = false;
  validate->add_option("--rules", validate_rules, "Rule file(s)");
  validate->add_option("--profiles", validate_profiles, "Profile TSV")
      ->capture_default_str();
  validate->add_option("--tags", validate_tags, "Rule tag map TSV")
      ->capture_default_str();
  validate->add_option("--discarded", validate_discard,
                       "Discard overlay rule file")
      ->capture_default_str();
  validate->add_flag("--fixture", validate_fixture,
                     "Check verdicts against the expected fixture");
  validate->add_option("--fixture-file", validate_fixture_path,
                       "Verdict fixture TSV (default: built-in)");

  // kappa
  auto* kappa = app.add_subcommand("kappa", "Cohen's kappa of two label columns");
  std::string kappa_labels;
  kappa->add_option("labels", kappa_labels, "Two-column TSV")->required();

  // convert
  auto* convert = app.add_subcommand("convert", "Convert between phone sets");
  std::string convert_tokens, convert_from = "arpabet", convert_to = "ipa";
  bool convert_lenient = false;
  convert->add_option("tokens", convert_tokens, "Space-separated tokens")
      ->required();
  convert->add_option("--from", convert_from, "Source phone set")
      ->capture_default_str();
  convert->add_option("--to", convert_to, "Target phone set")
      ->capture_default_str();
  convert->add_flag("--lenient", convert_lenient, "Pass unknown tokens through");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(adapt))
      return cmd_adapt(adapt_lexicon, table_path, adapt_rules, adapt_scope,
                       adapt_out, adapt_from, adapt_to, adapt_trace,
                       adapt_lenient);
    if (app.got_subcommand(mine))
      return cmd_mine(mine_pairs, table_path, mine_theta, mine_literature,
                      mine_out, mine_contextual);
    if (app.got_subcommand(tiers))
      return cmd_tiers(tiers_profiles, table_path, p_high, p_mid, tiers_json);
    if (app.got_subcommand(validate))
      return cmd_validate(validate_rules, validate_profiles, table_path,
                          validate_tags, validate_discard, validate_fixture,
                          validate_fixture_path);
    if (app.got_subcommand(kappa)) return cmd_kappa(kappa_labels);
    if (app.got_subcommand(convert))
      return cmd_convert(convert_tokens, table_path, convert_from, convert_to,
                         convert_lenient);
  } catch (const af::UnmappedPhoneError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMapping;
  } catch (const af::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
