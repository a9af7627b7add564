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

#ifndef ACCENTFORGE_MINING_HPP_
#define ACCENTFORGE_MINING_HPP_

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "accentforge/error.hpp"
#include "accentforge/phoneset.hpp"
#include "accentforge/rules.hpp"

namespace accentforge {

// ---------------------------------------------------------------------------
// Word-level alignment
// ---------------------------------------------------------------------------

/// One word's canonical (reference accent) and annotated (observed)
/// transcriptions.
struct TranscriptPair {
  std::string word;
  PhoneSeq canonical;
  PhoneSeq annotated;
  std::string language;
};

enum class EditOp { kMatch, kSubstitute, kInsert, kDelete };

/// Alignment operation over half-open spans: src spans partition the
/// canonical sequence, tgt spans the annotated one.
struct AlignOp {
  EditOp kind = EditOp::kMatch;
  std::size_t src_begin = 0, src_end = 0;
  std::size_t tgt_begin = 0, tgt_end = 0;
};

struct Alignment {
  std::vector<AlignOp> ops;
  double cost = 0.0;
};

/// Alignment costs: match 0, substitute/insert/delete 1. Substitution cost
/// optionally drops to 0.5 when the two phones share a place of
/// articulation (needs a symbol table); off by default.
struct AlignConfig {
  bool shared_place_half_cost = false;
  const SymbolTable* table = nullptr;
};

/// Minimal-cost edit alignment of two non-empty sequences, unit costs.
/// Ties are resolved during backtrace preferring substitute over delete
/// over insert.
inline Alignment align(const PhoneSeq& canonical, const PhoneSeq& annotated,
                       const AlignConfig& config = {}) {
  if (canonical.empty() || annotated.empty())
    throw Error("align requires non-empty sequences");
  const std::size_t n = canonical.size(), m = annotated.size();

  auto sub_cost = [&](std::size_t i, std::size_t j) -> double {
    if (canonical[i] == annotated[j]) return 0.0;
    if (config.shared_place_half_cost && config.table) {
      const Phone* a = config.table->find(canonical[i]);
      const Phone* b = config.table->find(annotated[j]);
      if (a && b) {
        auto pa = a->place(), pb = b->place();
        if (pa && pb && *pa == *pb) return 0.5;
      }
    }
    return 1.0;
  };

  std::vector<std::vector<double>> d(n + 1, std::vector<double>(m + 1, 0.0));
  for (std::size_t i = 1; i <= n; ++i) d[i][0] = static_cast<double>(i);
  for (std::size_t j = 1; j <= m; ++j) d[0][j] = static_cast<double>(j);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= m; ++j)
      d[i][j] = std::min({d[i - 1][j - 1] + sub_cost(i - 1, j - 1),
                          d[i - 1][j] + 1.0, d[i][j - 1] + 1.0});

  Alignment result;
  result.cost = d[n][m];
  std::size_t i = n, j = m;
  std::vector<AlignOp> rev;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && d[i][j] == d[i - 1][j - 1] + sub_cost(i - 1, j - 1)) {
      rev.push_back({canonical[i - 1] == annotated[j - 1] ? EditOp::kMatch
                                                          : EditOp::kSubstitute,
                     i - 1, i, j - 1, j});
      --i; --j;
    } else if (i > 0 && d[i][j] == d[i - 1][j] + 1.0) {
      rev.push_back({EditOp::kDelete, i - 1, i, j, j});
      --i;
    } else {
      rev.push_back({EditOp::kInsert, i, i, j - 1, j});
      --j;
    }
  }
  result.ops.assign(rev.rbegin(), rev.rend());
  return result;
}

// ---------------------------------------------------------------------------
// Candidate extraction and aggregation
// ---------------------------------------------------------------------------

/// A single observed divergence: maximal run of consecutive non-match ops,
/// with the flanking canonical symbols (or '#') as contexts.
struct CandidateOccurrence {
  PhoneSeq source;  // empty for a pure insertion
  PhoneSeq target;
  std::string left_ctx;
  std::string right_ctx;
};

/// Turns an alignment into candidate occurrences. Consecutive non-match ops
/// merge into one candidate so multi-phone divergences survive as single
/// rules; pure insertions always carry both contexts.
inline std::vector<CandidateOccurrence> extract_candidates(
    const Alignment& alignment, const TranscriptPair& pair) {
  std::vector<CandidateOccurrence> out;
  const auto& ops = alignment.ops;
  const std::size_t n = pair.canonical.size();
  std::size_t k = 0;
  while (k < ops.size()) {
    if (ops[k].kind == EditOp::kMatch) {
      ++k;
      continue;
    }
    std::size_t run_end = k;
    while (run_end + 1 < ops.size() && ops[run_end + 1].kind != EditOp::kMatch)
      ++run_end;
    const std::size_t src_begin = ops[k].src_begin;
    const std::size_t src_end = ops[run_end].src_end;
    const std::size_t tgt_begin = ops[k].tgt_begin;
    const std::size_t tgt_end = ops[run_end].tgt_end;
    CandidateOccurrence occ;
    occ.source.assign(pair.canonical.begin() + src_begin,
                      pair.canonical.begin() + src_end);
    occ.target.assign(pair.annotated.begin() + tgt_begin,
                      pair.annotated.begin() + tgt_end);
    occ.left_ctx = src_begin == 0 ? kBoundary : pair.canonical[src_begin - 1];
    occ.right_ctx = src_end >= n ? kBoundary : pair.canonical[src_end];
    out.push_back(std::move(occ));
    k = run_end + 1;
  }
  return out;
}

/// A merged candidate with corpus statistics. `opportunity` counts how
/// often the source (with contexts, when kept) occurs in the canonical
/// corpus; rate = count / opportunity.
struct CandidateRule {
  PhoneSeq source;
  PhoneSeq target;
  std::optional<std::string> left_ctx;
  std::optional<std::string> right_ctx;
  long count = 0;
  long opportunity = 0;
  double rate = 0.0;
};

/// Candidate identity granularity. Contextual keeps the flanking symbols in
/// the identity; ContextFree wildcards them by summing over contexts, which
/// is the view used for matching against context-free literature rules.
/// Pure insertions keep their contexts in either mode (an insertion without
/// context is not a valid rule).
enum class CandidateGranularity { kContextual, kContextFree };

struct AggregateConfig {
  double theta = 0.3;  // acceptance threshold on rate; toolkit default
  CandidateGranularity granularity = CandidateGranularity::kContextual;
};

namespace detail {

inline long count_occurrences(const std::vector<PhoneSeq>& corpus,
                              const PhoneSeq& source,
                              const std::optional<std::string>& left,
                              const std::optional<std::string>& right) {
  static const std::string kB = kBoundary;
  long total = 0;
  for (const auto& seq : corpus) {
    const std::size_t n = seq.size();
    if (source.empty()) {
      // Insertion slots sit between phones and at both ends.
      for (std::size_t i = 0; i <= n; ++i) {
        const std::string& l = i == 0 ? kB : seq[i - 1];
        const std::string& r = i == n ? kB : seq[i];
        if (left && *left != l) continue;
        if (right && *right != r) continue;
        ++total;
      }
      continue;
    }
    if (n < source.size()) continue;
    for (std::size_t i = 0; i + source.size() <= n; ++i) {
      bool match = true;
      for (std::size_t k = 0; k < source.size() && match; ++k)
        if (seq[i + k] != source[k]) match = false;
      if (!match) continue;
      if (left) {
        const std::string& l = i == 0 ? kB : seq[i - 1];
        if (*left != l) continue;
      }
      if (right) {
        const std::size_t e = i + source.size();
        const std::string& r = e == n ? kB : seq[e];
        if (*right != r) continue;
      }
      ++total;
    }
  }
  return total;
}

}  // namespace detail

/// Merges identical occurrences, counts opportunities over the canonical
/// corpus and keeps candidates whose rate clears theta. Output is sorted by
/// rate descending, then source, target and contexts lexicographically.
/// Candidates whose source never occurs in the given corpus are dropped and
/// counted in *warnings.
inline std::vector<CandidateRule> aggregate(
    const std::vector<CandidateOccurrence>& occurrences,
    const std::vector<PhoneSeq>& canonical_corpus,
    const AggregateConfig& config = {}, std::size_t* warnings = nullptr) {
  struct Key {
    std::string text;
    bool operator<(const Key& o) const { return text < o.text; }
  };
  struct Entry {
    PhoneSeq source, target;
    std::optional<std::string> left, right;
    long count = 0;
  };
  std::map<std::string, Entry> merged;
  for (const auto& occ : occurrences) {
    const bool keep_ctx =
        config.granularity == CandidateGranularity::kContextual ||
        occ.source.empty();
    std::string key = join(occ.source) + '\x1f' + join(occ.target);
    Entry entry;
    entry.source = occ.source;
    entry.target = occ.target;
    if (keep_ctx) {
      key += '\x1f' + occ.left_ctx + '\x1f' + occ.right_ctx;
      entry.left = occ.left_ctx;
      entry.right = occ.right_ctx;
    }
    auto [it, inserted] = merged.emplace(key, std::move(entry));
    ++it->second.count;
  }

  std::vector<CandidateRule> out;
  for (auto& [key, entry] : merged) {
    CandidateRule cand;
    cand.source = entry.source;
    cand.target = entry.target;
    cand.left_ctx = entry.left;
    cand.right_ctx = entry.right;
    cand.count = entry.count;
    cand.opportunity = detail::count_occurrences(canonical_corpus, cand.source,
                                                 cand.left_ctx, cand.right_ctx);
    if (cand.opportunity <= 0) {
      if (warnings) ++*warnings;
      continue;
    }
    cand.rate = static_cast<double>(cand.count) /
                static_cast<double>(cand.opportunity);
    if (cand.rate >= config.theta) out.push_back(std::move(cand));
  }
  std::sort(out.begin(), out.end(), [](const CandidateRule& a,
                                       const CandidateRule& b) {
    if (a.rate != b.rate) return a.rate > b.rate;
    const std::string sa = join(a.source), sb = join(b.source);
    if (sa != sb) return sa < sb;
    const std::string ta = join(a.target), tb = join(b.target);
    if (ta != tb) return ta < tb;
    const std::string ca = a.left_ctx.value_or("") + '\x1f' +
                           a.right_ctx.value_or("");
    const std::string cb = b.left_ctx.value_or("") + '\x1f' +
                           b.right_ctx.value_or("");
    return ca < cb;
  });
  return out;
}

/// Converts accepted candidates to rewrite rules with generated ids.
inline RuleSet candidates_to_rules(const std::vector<CandidateRule>& cands,
                                   const std::string& id_prefix = "m") {
  RuleSet rs;
  rs.name = "mined";
  std::size_t i = 0;
  for (const auto& c : cands) {
    RewriteRule r;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%s%03zu", id_prefix.c_str(), ++i);
    r.id = buf;
    r.source = c.source;
    r.target = c.target;
    r.left_ctx = c.left_ctx;
    r.right_ctx = c.right_ctx;
    rs.rules.push_back(std::move(r));
  }
  return rs;
}

// ---------------------------------------------------------------------------
// Category partition
// ---------------------------------------------------------------------------

/// cat1: rules both mined and in the literature; cat2: mined only;
/// cat3: literature only. The three sets are pairwise disjoint and their
/// union is mined + literature (by rule identity).
struct CategoryPartition {
  RuleSet cat1, cat2, cat3;
};

inline CategoryPartition categorize(const RuleSet& mined,
                                    const RuleSet& literature) {
  std::map<std::string, const RewriteRule*> mined_by_id;
  for (const auto& r : mined.rules) mined_by_id.emplace(r.identity(), &r);
  std::map<std::string, const RewriteRule*> lit_by_id;
  for (const auto& r : literature.rules) lit_by_id.emplace(r.identity(), &r);

  CategoryPartition part;
  part.cat1.name = "category1";
  part.cat2.name = "category2";
  part.cat3.name = "category3";
  for (const auto& r : literature.rules) {
    if (mined_by_id.count(r.identity()))
      part.cat1.rules.push_back(r);
    else
      part.cat3.rules.push_back(r);
  }
  for (const auto& r : mined.rules)
    if (!lit_by_id.count(r.identity())) part.cat2.rules.push_back(r);
  return part;
}

// ---------------------------------------------------------------------------
// Annotator agreement
// ---------------------------------------------------------------------------

struct KappaResult {
  double p_o = 0.0;  // observed agreement
  double p_e = 0.0;  // chance agreement
  double kappa = 0.0;
};

/// Cohen's kappa over two equal-length label sequences:
/// kappa = (p_o - p_e) / (1 - p_e). With degenerate p_e = 1 (one shared
/// label throughout) kappa is 1 when agreement is perfect, otherwise an
/// error.
inline KappaResult cohens_kappa(const std::vector<std::string>& a,
                                const std::vector<std::string>& b) {
  if (a.size() != b.size())
    throw Error("label sequences differ in length (" +
                std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                ")");
  if (a.empty()) throw Error("label sequences are empty");
  const double n = static_cast<double>(a.size());

  std::map<std::string, long> count_a, count_b;
  long agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++count_a[a[i]];
    ++count_b[b[i]];
    if (a[i] == b[i]) ++agree;
  }
  KappaResult result;
  result.p_o = agree / n;
  for (const auto& [label, ca] : count_a) {
    auto it = count_b.find(label);
    if (it != count_b.end())
      result.p_e += (ca / n) * (it->second / n);
  }
  if (result.p_e >= 1.0) {
    if (result.p_o >= 1.0) {
      result.kappa = 1.0;
      return result;
    }
    throw Error("degenerate labels: chance agreement is 1 with disagreement");
  }
  result.kappa = (result.p_o - result.p_e) / (1.0 - result.p_e);
  return result;
}

// ---------------------------------------------------------------------------
// Corpus I/O
// ---------------------------------------------------------------------------

/// Loads a pair corpus: TSV `word TAB canonical TAB annotated TAB language`,
/// canonical symbols in both transcription columns; '#' lines are comments.
inline std::vector<TranscriptPair> load_pairs(std::istream& in,
                                              const SymbolTable& table,
                                              const std::string& filename = "") {
  std::vector<TranscriptPair> pairs;
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
    if (cols.size() < 3)
      throw ParseError("expected word, canonical, annotated[, language]",
                       lineno, filename);
    TranscriptPair pair;
    pair.word = cols[0];
    try {
      pair.canonical = parse_phone_string(cols[1], SymbolSet::kCanonical, table);
      pair.annotated = parse_phone_string(cols[2], SymbolSet::kCanonical, table);
    } catch (const UnknownTokenError& e) {
      throw ParseError(e.what(), lineno, filename);
    }
    if (pair.canonical.empty() || pair.annotated.empty())
      throw ParseError("empty transcription for '" + pair.word + "'", lineno,
                       filename);
    if (cols.size() > 3) pair.language = cols[3];
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

inline std::vector<TranscriptPair> load_pairs(const std::string& path,
                                              const SymbolTable& table) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open pair corpus", 0, path);
  return load_pairs(in, table, path);
}

/// Loads a two-column TSV of labels for the kappa command.
inline std::pair<std::vector<std::string>, std::vector<std::string>>
load_labels(std::istream& in, const std::string& filename = "") {
  std::vector<std::string> a, b;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError("expected two tab-separated labels", lineno, filename);
    a.push_back(detail::trim(line.substr(0, tab)));
    b.push_back(detail::trim(line.substr(tab + 1)));
  }
  return {a, b};
}

inline std::pair<std::vector<std::string>, std::vector<std::string>>
load_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open label file", 0, path);
  return load_labels(in, path);
}

}  // namespace accentforge

#endif  // ACCENTFORGE_MINING_HPP_
