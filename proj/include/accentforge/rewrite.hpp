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

#ifndef ACCENTFORGE_REWRITE_HPP_
#define ACCENTFORGE_REWRITE_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "accentforge/rules.hpp"

namespace accentforge {

/// One rule application: the consumed input span [start, end) and what was
/// emitted in its place. Insertions have start == end and empty source.
struct RewriteStep {
  std::string rule_id;
  std::size_t start = 0;
  std::size_t end = 0;
  PhoneSeq source;
  PhoneSeq target;
};

/// Steps are non-overlapping with strictly increasing start positions.
struct RewriteTrace {
  std::vector<RewriteStep> steps;
};

struct RewriteResult {
  PhoneSeq output;
  RewriteTrace trace;
};

/// Applies a compiled rule set in a single left-to-right pass over the
/// input. At each position the matching rule with the longest source wins;
/// equal-length matches are broken by file order. A matched span is
/// consumed and its emitted target is not rescanned, so rules never cascade
/// (for {a->b, b->c}, /a/ yields /b/). Contexts are evaluated against the
/// original input with a virtual '#' at both ends. Insertions (empty
/// source) fire only where no consuming rule matches, at most once per
/// position. Unmatched phones are copied through; with no matches the
/// output is the input.
inline RewriteResult rewrite(const PhoneSeq& seq, const CompiledRuleSet& crs) {
  RewriteResult result;
  const std::size_t n = seq.size();
  result.output.reserve(n);

  auto at = [&](std::size_t i) -> const std::string& {
    static const std::string boundary = kBoundary;
    return i < n ? seq[i] : boundary;
  };
  auto left_of = [&](std::size_t i) -> const std::string& {
    static const std::string boundary = kBoundary;
    return i == 0 ? boundary : seq[i - 1];
  };

  auto context_ok = [&](const RewriteRule& r, std::size_t begin,
                        std::size_t end_pos) {
    if (r.left_ctx && *r.left_ctx != left_of(begin)) return false;
    if (r.right_ctx && *r.right_ctx != at(end_pos)) return false;
    return true;
  };

  auto match_insertion = [&](std::size_t pos) -> const RewriteRule* {
    for (std::size_t idx : crs.insertions()) {
      const RewriteRule& r = crs.rules()[idx];
      if (context_ok(r, pos, pos)) return &r;
    }
    return nullptr;
  };

  std::size_t i = 0;
  while (i < n) {
    const RewriteRule* winner = nullptr;
    std::size_t winner_len = 0;
    if (const auto* cands = crs.candidates(seq[i])) {
      for (std::size_t idx : *cands) {
        const RewriteRule& r = crs.rules()[idx];
        const std::size_t len = r.source.size();
        if (i + len > n) continue;
        bool matches = true;
        for (std::size_t k = 1; k < len && matches; ++k)
          if (seq[i + k] != r.source[k]) matches = false;
        if (matches && context_ok(r, i, i + len)) {
          winner = &r;
          winner_len = len;
          break;  // candidates are longest-first, then file order
        }
      }
    }
    if (winner) {
      result.trace.steps.push_back(
          {winner->id, i, i + winner_len,
           PhoneSeq(seq.begin() + i, seq.begin() + i + winner_len),
           winner->target});
      result.output.insert(result.output.end(), winner->target.begin(),
                           winner->target.end());
      i += winner_len;
      continue;
    }
    if (const RewriteRule* ins = match_insertion(i)) {
      result.trace.steps.push_back({ins->id, i, i, {}, ins->target});
      result.output.insert(result.output.end(), ins->target.begin(),
                           ins->target.end());
    }
    result.output.push_back(seq[i]);
    ++i;
  }
  // Insertion slot after the last phone.
  if (const RewriteRule* ins = match_insertion(n)) {
    result.trace.steps.push_back({ins->id, n, n, {}, ins->target});
    result.output.insert(result.output.end(), ins->target.begin(),
                         ins->target.end());
  }
  return result;
}

/// Re-applies a trace to its original input; returns exactly the output
/// rewrite() produced.
inline PhoneSeq replay(const PhoneSeq& input, const RewriteTrace& trace) {
  PhoneSeq out;
  std::size_t pos = 0;
  for (const auto& step : trace.steps) {
    out.insert(out.end(), input.begin() + pos, input.begin() + step.start);
    // An insertion step emits before the phone at its position; the phone
    // itself is copied by the next span copy.
    out.insert(out.end(), step.target.begin(), step.target.end());
    pos = step.end;
  }
  out.insert(out.end(), input.begin() + pos, input.end());
  return out;
}

}  // namespace accentforge

#endif  // ACCENTFORGE_REWRITE_HPP_
